import numpy as np
import pytest

from lumenkit import CmfTable, default_cmf


@pytest.fixture(scope="session")
def cmf():
    return default_cmf()


def subsample_cmf(cmf, start_nm, stop_nm, step_nm):
    """Reduced CMF table built from rows of the full one."""
    wl = cmf.wavelengths_nm
    mask = (wl >= start_nm) & (wl <= stop_nm) & (np.mod(wl - start_nm, step_nm) == 0)
    return CmfTable(wl[mask], cmf.xbar[mask], cmf.ybar[mask], cmf.zbar[mask])


@pytest.fixture(scope="session")
def reduced_cmfs(cmf):
    """Small instances whose ybar peak still satisfies the table invariant."""
    return [
        subsample_cmf(cmf, 440.0, 640.0, 40.0),   # N = 6
        subsample_cmf(cmf, 440.0, 650.0, 30.0),   # N = 8
        subsample_cmf(cmf, 405.0, 755.0, 50.0),   # N = 8
    ]
