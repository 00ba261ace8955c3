"""Storing finished runs and their first appearances."""

import logging
from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, ForeignKey, Integer, String, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from gammasim.machine.outcome import RunResult
from gammasim.machine.program import TAPE_NAMES

logger = logging.getLogger(__name__)

Base = declarative_base()


class RunRecord(Base):
    """One finished run of one program under one operator."""

    __tablename__ = 'runs'

    id = Column(Integer, primary_key=True)
    program = Column(String, nullable=False)
    operator = Column(String, nullable=False)
    outcome = Column(String, nullable=False)
    stage = Column(String, nullable=False)
    steps = Column(Integer, default=0)
    created = Column(DateTime, default=lambda: datetime.now(timezone.utc))

    def __repr__(self):
        return f"<RunRecord(program='{self.program}', operator='{self.operator}', outcome={self.outcome})>"


class AppearanceRecord(Base):
    """First stage at which a content appeared on a tape during a run."""

    __tablename__ = 'appearances'

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('runs.id'), nullable=False)
    tape = Column(String, nullable=False)
    content = Column(String, nullable=False)
    stage = Column(String, nullable=False)

    def __repr__(self):
        return f"<AppearanceRecord(run={self.run_id}, tape={self.tape}, stage={self.stage})>"


class RunStore:
    """Manages the SQLite file runs are recorded in."""

    def __init__(self, db_path='gammasim.db'):
        """Open (and create if needed) the store.

        Args:
            db_path: Path to the SQLite database file
        """
        self.engine = create_engine(f'sqlite:///{db_path}')
        Base.metadata.create_all(self.engine)
        Session = sessionmaker(bind=self.engine)
        self.session = Session()

    def record_run(self, name, op_spec, result: RunResult):
        """Record a run together with its first appearances.

        Args:
            name: Program name
            op_spec: Operator spec the program ran under
            result: The finished run

        Returns:
            The created RunRecord
        """
        record = RunRecord(
            program=name,
            operator=op_spec,
            outcome=result.outcome.kind,
            stage=str(result.outcome.stage),
            steps=result.steps,
        )
        self.session.add(record)
        self.session.flush()
        ordered = sorted(result.appearances.items(), key=lambda item: (item[1], item[0][0], item[0][1].render()))
        for (tape, content), stage in ordered:
            self.session.add(AppearanceRecord(run_id=record.id, tape=TAPE_NAMES[tape],
                                              content=content.render(), stage=str(stage)))
        self.session.commit()
        logger.info(f"stored run {record.id} of {name} with {len(ordered)} appearances")
        return record

    def get_runs(self):
        """Get every recorded run, oldest first.

        Returns:
            List of RunRecord objects
        """
        return self.session.query(RunRecord).order_by(RunRecord.id).all()

    def get_appearances(self, run_id):
        """Get the first appearances recorded for a run.

        Args:
            run_id: ID of the run

        Returns:
            List of AppearanceRecord objects in the order they were recorded
        """
        return (self.session.query(AppearanceRecord)
                .filter(AppearanceRecord.run_id == run_id)
                .order_by(AppearanceRecord.id)
                .all())

    def close(self):
        """Close the database session."""
        self.session.close()
        self.engine.dispose()
