import logging
import os
import sys

from src.config import settings


def logs(file_name: str, log_dir: str | None = None) -> logging.Logger:
    """
    Logger `structree.<stem>` for one module: stderr at settings.LOG_LEVEL, so JSON and
    DOT on stdout stay clean, and everything down to DEBUG appended to `<log_dir>/<file_name>`.

    Args:
        file_name (str): Log file of the module (e.g., 'cuts.log', 'ends.log').
        log_dir (str): Directory of the log files. Defaults to settings.LOG_DIR (STRUCTREE_LOG_DIR).
    """
    log_dir = log_dir or settings.LOG_DIR
    os.makedirs(log_dir, exist_ok=True)

    file_path = os.path.join(log_dir, file_name)

    logger = logging.getLogger(f"structree.{os.path.splitext(file_name)[0]}")
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    # handlers are attached once per module logger
    if not logger.handlers:
        console_handler = logging.StreamHandler(sys.stderr)
        file_handler = logging.FileHandler(file_path, mode="a", encoding="utf-8")

        formatter = logging.Formatter(
            "{asctime} - {levelname} - {message}",
            style="{",
            datefmt="%Y-%m-%d %H:%M"
        )

        console_handler.setFormatter(formatter)
        console_handler.setLevel(settings.LOG_LEVEL)
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)

        logger.addHandler(console_handler)
        logger.addHandler(file_handler)

    return logger
