"""Persistence of run ledgers."""

import logging
from typing import Iterable, List, Optional

from sqlalchemy.exc import SQLAlchemyError
from sqlmodel import Session, SQLModel, create_engine, select

from ..models.cost_ledger import CostLedger

logger = logging.getLogger(__name__)


class LedgerStore:
    """Saves CostLedger rows to any SQLAlchemy database URL."""

    def __init__(self, db_url: str):
        self.db_url = db_url
        self.engine = create_engine(db_url)
        SQLModel.metadata.create_all(self.engine, tables=[CostLedger.__table__])

    def save(self, ledgers: Iterable[CostLedger]) -> int:
        """Insert ledgers; returns how many were written."""
        ledgers = list(ledgers)
        try:
            with Session(self.engine) as session:
                for ledger in ledgers:
                    session.add(ledger)
                session.commit()
                for ledger in ledgers:
                    session.refresh(ledger)
        except SQLAlchemyError as e:
            logger.error(f"Failed to save {len(ledgers)} ledger(s) to {self.db_url}: {e}", exc_info=True)
            raise
        logger.info(f"Saved {len(ledgers)} ledger(s) to run store")
        return len(ledgers)

    def list_runs(self, policy: Optional[str] = None, limit: int = 50) -> List[CostLedger]:
        """Most recent runs first."""
        with Session(self.engine) as session:
            query = select(CostLedger)
            if policy is not None:
                query = query.where(CostLedger.policy == policy)
            query = query.order_by(CostLedger.created_at.desc(), CostLedger.id.desc()).limit(limit)
            return list(session.exec(query).all())
