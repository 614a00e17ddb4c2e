import logging
import sys

from src.logger.logg import logs


def test_module_logger_writes_its_own_file(tmp_path) -> None:
    logger = logs("unit.log", str(tmp_path))
    assert logger.name == "structree.unit"
    assert not logger.propagate
    logger.debug("search nodes: %d", 42)
    for handler in logger.handlers:
        handler.flush()
    assert "search nodes: 42" in (tmp_path / "unit.log").read_text(encoding="utf-8")


def test_handlers_are_attached_once(tmp_path) -> None:
    first = logs("twice.log", str(tmp_path))
    second = logs("twice.log", str(tmp_path))
    assert first is second
    assert len(second.handlers) == 2
    console = [h for h in second.handlers if not isinstance(h, logging.FileHandler)]
    assert [h.stream for h in console] == [sys.stderr]
