#!/usr/bin/env python3
"""
Timed CLI steps.

Each step (load, search, oracle, ...) runs inside a Pipeline so the report can
carry wall time and failures are logged once with their duration.
"""

import time
from types import TracebackType
from typing import Optional, Type

from loguru import logger

from .exceptions import LorenzPathError


class PipelineError(LorenzPathError):
    """A step failed with an exception outside the lorenzpath hierarchy."""
    pass


class Pipeline:
    """
    Context manager that times one step.

    Domain errors pass through unchanged so the CLI can still map them to
    exit codes; anything else is wrapped in PipelineError.
    """

    def __init__(self, step_name: str):
        self.step_name = step_name
        self.start_time = 0.0
        self.duration = 0.0

    def __enter__(self) -> "Pipeline":
        self.start_time = time.perf_counter()
        logger.debug("[{step}] starting", step=self.step_name)
        return self

    def __exit__(
        self,
        exc_type: Optional[Type[BaseException]],
        exc_val: Optional[BaseException],
        exc_tb: Optional[TracebackType],
    ) -> bool:
        self.duration = time.perf_counter() - self.start_time

        if exc_type is not None:
            logger.debug(
                "[{step}] failed after {duration:.3f}s: {error}",
                step=self.step_name,
                duration=self.duration,
                error=exc_val,
            )
            if isinstance(exc_val, (LorenzPathError, KeyboardInterrupt, SystemExit)):
                return False
            # click/typer control flow (Exit, BadParameter) must not be wrapped
            if type(exc_val).__module__.startswith(("click", "typer")):
                return False
            raise PipelineError(f"Step '{self.step_name}' failed: {exc_val}") from exc_val

        logger.debug("[{step}] done in {duration:.3f}s", step=self.step_name, duration=self.duration)
        return False

