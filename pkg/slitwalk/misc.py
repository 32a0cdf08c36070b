import hashlib
import sys
from pathlib import Path
from typing import Generator, List, Tuple, Union

import pendulum
from pendulum import DateTime

CONFIG_SUFFIX = ".cfg"


def utcnow() -> DateTime:
    """Returns the current time in UTC as a Pendulum DateTime."""
    return pendulum.now("UTC")


def config_text_from_file(fpath: Union[str, Path]) -> str:
    """
    Args:
        fpath: The path to the file.

    Returns:
        The file contents as a string, stripped of leading/trailing whitespace.

    Reads an experiment config file.
    """
    try:
        with open(str(fpath), encoding="utf-8") as f:
            return f.read().strip()
    except FileNotFoundError:
        raise FileNotFoundError(f"config file not found: {fpath}")
    except IsADirectoryError:
        raise
    except OSError as e:
        raise OSError(f"Error reading config file {fpath}: {e}")


def config_texts_from_folder_iter(
    fpath: Union[str, Path],
) -> Generator[Tuple[Path, str], None, None]:
    """
    Args:
        fpath: The path to the folder.
    Yields:
        Tuples of (file path, config text) for each .cfg file in the folder.

    Iterates through all .cfg files in a folder (and subfolders).
    """
    folder = Path(fpath)
    if not folder.is_dir():
        raise NotADirectoryError(f"Path is not a directory: {fpath}")

    for config_file in sorted(folder.glob(f"**/*{CONFIG_SUFFIX}")):
        try:
            text = config_text_from_file(config_file)
            if text:
                yield config_file, text
        except OSError as e:
            print(f"Error reading {config_file}: {e}", file=sys.stderr)
            raise


def config_texts_from_folder(fpath: Union[str, Path]) -> List[str]:
    return [text for _, text in config_texts_from_folder_iter(fpath)]


def sha256_of_file(fpath: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with open(str(fpath), "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()
