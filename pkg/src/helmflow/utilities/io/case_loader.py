from logging import getLogger
from pathlib import Path

from helmflow.exceptions import CaseLoadError

logger = getLogger(__name__)


def read_case_file(file_path: Path) -> bytes:
    """
    Reads the raw bytes of a case document.

    Args:
        file_path (Path): Path to the JSON case file.
    Returns:
        bytes: File contents.
    Raises:
        CaseLoadError: If the file does not exist, is not a file, or cannot be read.
    """
    if not file_path.exists():
        raise CaseLoadError(str(file_path), "File does not exist")

    if not file_path.is_file():
        raise CaseLoadError(str(file_path), "Path is not a file")

    try:
        data = file_path.read_bytes()
    except OSError as e:
        raise CaseLoadError(str(file_path), str(e)) from e

    logger.debug("Read case file %s (%d bytes)", file_path.name, len(data))
    return data
