"""Shared fixtures: the full pipeline is run once per builtin and cached for
the whole session, since every stage is deterministic."""

from __future__ import annotations

from dataclasses import dataclass

import pytest

from qcflat.biquard import Connection, TorsionData, compute_torsion, solve_connection
from qcflat.builtins import builtin_names, get_builtin
from qcflat.curvature import CurvaturePackage, compute_curvature
from qcflat.qc import QcStructure, build_qc
from qcflat.structure import to_lie_frame
from qcflat.wqc import WRData, compute_WR


@dataclass
class Pipeline:
    name: str
    qc: QcStructure
    conn: Connection
    td: TorsionData
    cp: CurvaturePackage
    wrd: WRData


_CACHE: dict[str, Pipeline] = {}


def run_pipeline(name: str) -> Pipeline:
    if name not in _CACHE:
        qc = build_qc(to_lie_frame(get_builtin(name)))
        conn = solve_connection(qc)
        td = compute_torsion(qc, conn)
        cp = compute_curvature(qc, conn)
        wrd = compute_WR(cp, td, qc)
        _CACHE[name] = Pipeline(name=name, qc=qc, conn=conn, td=td, cp=cp, wrd=wrd)
    return _CACHE[name]


@pytest.fixture(params=builtin_names())
def pipeline(request) -> Pipeline:
    return run_pipeline(request.param)


@pytest.fixture
def g1():
    return run_pipeline("g1")


@pytest.fixture
def g3():
    return run_pipeline("g3")


@pytest.fixture
def heis1():
    return run_pipeline("heisenberg-n1")


@pytest.fixture
def heis2():
    return run_pipeline("heisenberg-n2")
