"""Port interfaces - Abstractions for documents, settings and reports."""
from __future__ import annotations

from nkpr.ports.config_repository import IConfigRepository
from nkpr.ports.document_repository import IDocumentRepository
from nkpr.ports.report_writer import IReportWriter

__all__ = ['IConfigRepository', 'IDocumentRepository', 'IReportWriter']
