import pytest

from dspc.config import Settings
from dspc.pipeline import Compiler

QUARTER = """\
pointInQuarterCircle({R : real},           --(a)
                     {X : real, Y : real}) --(b)
  method
    X : real = for(0.0, R, 1.0);           --(c)
    Y : real = for(0.0, R, 1.0);           --(d)
    D : real = sqrt(X^2 + Y^2);            --(e)
    test(D =< R);                          --(f)
  end method;
end module;
"""

FOR_MODULE = """\
for({B : real, E : real, S : real},{N : real})
  method                        --The first method
    when(B =< E);               --(a)
    N : real = B;               --(b)
  end method;
  method                        --The second method
    when(B+S =< E);             --(c)
    B1 : real = B+S;            --(d)
    call(for, {B1, E, S}, {N}); --(e)
  end method;
end;
"""


@pytest.fixture
def settings():
    return Settings(_env_file=None)


@pytest.fixture
def audit_settings():
    return Settings(_env_file=None, audit_cells=True)


@pytest.fixture
def compiler(settings):
    return Compiler(settings)


@pytest.fixture(scope="session")
def corpus():
    """Compiled corpus programs, compiled once per session."""
    compiler = Compiler(Settings(_env_file=None))
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = compiler.compile_corpus(name)
        return cache[name]

    return load


def outputs(solutions):
    return [tuple(s.outputs.values()) for s in solutions]
