import math

import pytest
from mpmath import mp, mpf

from predlab.covariance import covariances_for
from predlab.toeplitz import levinson

PI = math.pi


def rel_err(value, target):
    with mp.workprec(max(mp.prec, 260)):
        return abs(mpf(value) - mpf(target)) / abs(mpf(target))


def trace_for(density, n_max, precision_bits, target=None):
    cov = covariances_for(density, n_max, precision_bits, target_abs_error=target)
    return cov, levinson(cov, n_max)


@pytest.fixture(scope="session")
def workprec300():
    with mp.workprec(300):
        yield
