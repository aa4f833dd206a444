"""Input document repository port interface."""
from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Union


class IDocumentRepository(ABC):
    """Interface for reading the JSON documents the commands consume.

    Density operators, POVMs, class models and learning scenarios all
    arrive as documents; decoding them into domain objects is the codec's
    job, not the repository's.
    """

    @abstractmethod
    def load(self, path: Union[str, Path]) -> Dict[str, Any]:
        """Load one document.

        Args:
            path: Location of the document

        Returns:
            The parsed top-level JSON object

        Raises:
            InputFileError: if the document cannot be read
            MalformedDocumentError: if it is not a JSON object
        """
        pass

    @abstractmethod
    def exists(self, path: Union[str, Path]) -> bool:
        """Check whether a document exists.

        Args:
            path: Location of the document

        Returns:
            True if it can be opened for reading
        """
        pass
