#!/usr/bin/env python3
"""
Logging Configuration and Utilities

Purpose: Centralized logging so the CLI and tests configure loguru in one place

Notes:
    - stdout carries the JSON reports, so every sink here writes to stderr or a file
    - loguru formats messages with keyword arguments, keep '{' and '}' out of plain messages
"""

import sys
from enum import Enum
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

from loguru import logger

from .exceptions import ConfigurationError

F = TypeVar("F", bound=Callable[..., Any])


class LogLevel(str, Enum):
    """Levels accepted on the command line."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class LogFormat(str, Enum):
    """Formatting options."""
    CONSOLE = "console"
    JSON = "json"
    SIMPLE = "simple"


# Current preference
DEFAULT_CONFIG = {
    "console_level": LogLevel.WARNING,
    "file_level": LogLevel.DEBUG,
    "rotation": "10 MB",
    "retention": "30 days",
    "format": LogFormat.CONSOLE,
    "enqueue": False,  # CliRunner swaps stderr per invocation, a queue would outlive it
    "backtrace": True,
    "diagnose": False,
}


def _create_console_format() -> str:
    """Colored single line."""
    return (
        "<green>{time:HH:mm:ss.SSS}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan> - "
        "<level>{message}</level>"
    )


def _create_simple_format() -> str:
    """Minimum information."""
    return (
        "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | "
        "{name}:{function}:{line} - {message}"
    )


def setup_logging(
    log_file: Optional[Path] = None,
    console_level: LogLevel = LogLevel.WARNING,
    file_level: LogLevel = LogLevel.DEBUG,
    rotation: str = "10 MB",
    retention: str = "30 days",
    format: LogFormat = LogFormat.CONSOLE,
    **kwargs: Any,
) -> None:
    """
    Configure loguru sinks for a CLI run.

    Args:
        log_file: Optional path for file logging
        console_level: stderr log level
        file_level: File log level
        rotation: Log rotation size (e.g., "10 MB", "1 day")
        retention: Log retention period (e.g., "30 days", "1 week")
        format: Log format (console, json, simple)
        **kwargs: Overrides for enqueue / backtrace / diagnose

    Raises:
        ConfigurationError: If logging configuration fails

    Example:
        >>> setup_logging(console_level=LogLevel.DEBUG, format=LogFormat.JSON)
    """
    try:
        # loguru recommends removing default logger
        logger.remove()

        common = {
            "enqueue": kwargs.get("enqueue", DEFAULT_CONFIG["enqueue"]),
            "backtrace": kwargs.get("backtrace", DEFAULT_CONFIG["backtrace"]),
            "diagnose": kwargs.get("diagnose", DEFAULT_CONFIG["diagnose"]),
        }

        if format == LogFormat.JSON:
            logger.add(sys.stderr, level=console_level.value, serialize=True, **common)
        else:
            console_format = (
                _create_simple_format() if format == LogFormat.SIMPLE else _create_console_format()
            )
            logger.add(
                sys.stderr,
                format=console_format,
                level=console_level.value,
                colorize=(format == LogFormat.CONSOLE),
                **common,
            )

        if log_file:
            log_file.parent.mkdir(parents=True, exist_ok=True)
            logger.add(
                str(log_file),
                format=_create_simple_format(),
                level=file_level.value,
                rotation=rotation,
                retention=retention,
                serialize=(format == LogFormat.JSON),
                **common,
            )

        logger.debug(
            "Logging configured: console={console} file={file} format={fmt}",
            console=console_level.value,
            file=str(log_file) if log_file else "NONE",
            fmt=format.value,
        )

    except Exception as e:
        raise ConfigurationError(f"Failed to configure logging: {e}") from e


def log_execution_time(func: F) -> F:
    """
    Log how long the wrapped function took.

    Example:
        >>> @log_execution_time
        ... def expensive_operation():
        ...     ...
    """
    import time

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        start_time = time.perf_counter()
        logger.debug("Starting {name}", name=func.__name__)

        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.error(
                "Failed {name} after {elapsed:.3f}s: {error}",
                name=func.__name__,
                elapsed=time.perf_counter() - start_time,
                error=str(e),
            )
            raise

        logger.debug(
            "Completed {name} in {elapsed:.3f}s",
            name=func.__name__,
            elapsed=time.perf_counter() - start_time,
        )
        return result

    return wrapper  # type: ignore[return-value]
