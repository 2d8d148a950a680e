import math

import numpy as np
import pytest

import gradecalc as gc


def test_builtin_groups_listed():
    assert {"abelian1", "heisenberg", "heisenberg358"} <= set(gc.builtin_groups())


def test_heisenberg_law_and_dilations():
    h = gc.Group("heisenberg")
    assert h.weights == [1, 1, 2]
    assert h.homogeneous_dimension == 4
    assert h.is_stratified
    x, y = [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]
    xy = h.multiply(x, y)
    yx = h.multiply(y, x)
    assert xy[2] - yx[2] == pytest.approx(1.0)
    assert h.multiply(x, h.invert(x)) == pytest.approx([0.0, 0.0, 0.0])
    p = [0.3, -0.2, 0.5]
    assert h.pseudo_norm(h.dilate(2.0, p)) == pytest.approx(2.0 * h.pseudo_norm(p))


def test_graded_not_stratified():
    g = gc.Group("heisenberg358")
    assert g.weights == [3, 5, 8]
    assert not g.is_stratified


def test_heat_kernel_on_the_line_matches_gaussian():
    w = gc.Workspace("abelian1")
    t = 0.1
    h = w.heat_kernel(t)
    assert h.shape == tuple(w.shape)
    assert w.integrate(h) == pytest.approx(1.0, abs=1e-3)
    x = np.asarray(w.axis(0))
    exact = np.exp(-x**2 / (4 * t)) / math.sqrt(4 * math.pi * t)
    assert np.max(np.abs(h - exact)) < 1e-2 * exact.max()


def test_bessel_kernel_on_the_line():
    w = gc.Workspace("abelian1")
    b = w.bessel_kernel(2.0)
    x = np.asarray(w.axis(0))
    inner = np.abs(x) < 3
    exact = 0.5 * np.exp(-np.abs(x))
    assert np.max(np.abs(b[inner] - exact[inner])) < 2e-2 * exact.max()


def test_fractional_round_trip_and_norms():
    w = gc.Workspace("abelian1")
    x = np.asarray(w.axis(0))
    f = np.exp(-x**2)
    back = w.fractional_apply(w.fractional_apply(f, 2.0), -2.0)
    assert np.max(np.abs(back - f)) < 1e-8
    n0 = w.sobolev_norm(f, 0.0, 2.0)
    n2 = w.sobolev_norm(f, 2.0, 2.0)
    assert n2 > n0 > 0


def test_group_check_report():
    rep = gc.group_check("heisenberg")
    assert rep["all_pass"]
    ids = {c["id"] for c in rep["checks"]}
    assert "heisenberg/group.associativity" in ids
    assert rep["text"].startswith("# gradecalc verification report")


def test_bad_input_raises_value_error():
    with pytest.raises(ValueError):
        gc.Group("no_such_group")
    with pytest.raises(ValueError):
        gc.Workspace("heisenberg", points=[40])
    with pytest.raises(ValueError):
        gc.Workspace("abelian1", op="-X^^2")
