import pytest

from scripts.lorenzpath.exceptions import GeneratorError
from scripts.lorenzpath.pipeline import Pipeline, PipelineError


def test_domain_errors_pass_through():
    with pytest.raises(GeneratorError):
        with Pipeline("generate"):
            raise GeneratorError("p must be >= 1")


def test_foreign_errors_are_wrapped():
    with pytest.raises(PipelineError, match="Step 'load' failed") as info:
        with Pipeline("load"):
            raise KeyError("scenarios")
    assert isinstance(info.value.__cause__, KeyError)


def test_duration_recorded():
    with Pipeline("noop") as step:
        pass
    assert step.duration >= 0.0

