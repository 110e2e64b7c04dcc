import logging
import sys

from loguru import logger

from src.config import settings

logger.remove()

logger.add(
    sys.stdout,
    format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan> | <level>{message}</level>",
    level=settings.LOG_LEVEL,
)


logger.add(
    f"{settings.LOG_DIR}/app.log",
    rotation="10:00",
    retention="30 days",
    compression="zip",
    level="DEBUG",
)


class InterceptHandler(logging.Handler):
    """Перенаправляет записи stdlib logging (numba, сторонние библиотеки) в loguru."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            level = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        frame, depth = logging.currentframe(), 2
        while frame and frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(level, record.getMessage())


def setup_logging() -> None:
    logging.basicConfig(handlers=[InterceptHandler()], level=0, force=True)
    # numba пишет много отладочного шума
    logging.getLogger("numba").setLevel(logging.WARNING)
