#!/usr/bin/env python3
"""Main entry point for gammasim."""

from gammasim.cli import cli

if __name__ == '__main__':
    cli()
