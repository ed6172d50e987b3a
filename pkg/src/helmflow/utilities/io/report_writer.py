from pathlib import Path

from helmflow.exceptions import ReportWriteError


def write_text(output_path: Path, text: str) -> None:
    """
    Writes a report or dump to disk as UTF-8, creating parent directories.

    Args:
        output_path (Path): Destination file.
        text (str): Document to write.
    Raises:
        ReportWriteError: If the directory or the file cannot be written.
    """
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
    except Exception as e:
        raise ReportWriteError(
            str(output_path), f"Cannot create parent directory: {e}"
        ) from e

    try:
        output_path.write_text(text, encoding="utf-8")
    except Exception as e:
        raise ReportWriteError(str(output_path), str(e)) from e
