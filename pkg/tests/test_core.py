"""Domain types: angles, conventions, windows, model builders, PT checks."""

import math

import numpy as np
import pytest

from ptscatter import (
    InteractionWindow,
    LatticeConvention,
    ModelFamily,
    PhiAngle,
    ScatteringAmplitudes,
    WaveFunctionWindow,
    build_pt_delta_pair,
    build_ultralocal,
    embed_symmetric,
    energy_from_phi,
    first_pt_violation,
    is_pt_symmetric,
    pt_conjugate,
)


class TestPhiAngle:
    def test_accepts_interior_values(self):
        assert PhiAngle(1.0).phi == 1.0
        assert PhiAngle(3.14).phi == 3.14

    @pytest.mark.parametrize("bad", [0.0, math.pi, -0.3, 4.0, math.nan])
    def test_rejects_out_of_band(self, bad):
        with pytest.raises(ValueError):
            PhiAngle(bad)


class TestLatticeConvention:
    def test_defaults(self):
        conv = LatticeConvention()
        assert conv.h == 1.0 and conv.diagonal_shift is False

    @pytest.mark.parametrize("bad", [0.0, -1.0])
    def test_rejects_nonpositive_stepsize(self, bad):
        with pytest.raises(ValueError):
            LatticeConvention(h=bad)


class TestEnergyFromPhi:
    def test_midband_shifted(self):
        # cos(pi/2) = 0
        assert energy_from_phi(PhiAngle(math.pi / 2), LatticeConvention(diagonal_shift=True)) == pytest.approx(2.0)

    def test_halved_stepsize(self):
        value = energy_from_phi(PhiAngle(math.pi / 3), LatticeConvention(h=0.5, diagonal_shift=True))
        assert value == pytest.approx(4.0, abs=1e-12)  # (2 - 1)/0.25

    def test_band_limits_shifted(self):
        conv = LatticeConvention(diagonal_shift=True)
        low = energy_from_phi(PhiAngle(1e-6), conv)
        high = energy_from_phi(PhiAngle(math.pi - 1e-6), conv)
        assert 0.0 < low < 1e-11
        assert 4.0 - 1e-11 < high < 4.0

    def test_zero_diagonal_band(self):
        conv = LatticeConvention()
        assert energy_from_phi(PhiAngle(math.pi / 2), conv) == pytest.approx(0.0, abs=1e-15)
        assert -2.0 < energy_from_phi(PhiAngle(0.01), conv) < 2.0

    def test_strictly_monotone_in_phi(self):
        conv = LatticeConvention(diagonal_shift=True)
        values = [energy_from_phi(PhiAngle(p), conv) for p in np.linspace(1e-4, math.pi - 1e-4, 200)]
        assert all(a < b for a, b in zip(values, values[1:]))


class TestInteractionWindow:
    def test_rejects_reversed_bounds(self):
        with pytest.raises(ValueError):
            InteractionWindow(lo=1, hi=0)

    def test_rejects_entry_outside_bounds(self):
        with pytest.raises(ValueError):
            InteractionWindow(lo=0, hi=1, entries={(0, 2): 1.0})

    def test_absent_pairs_read_as_zero(self):
        win = InteractionWindow(lo=0, hi=2, entries={(0, 1): 2.0})
        assert win.entry(0, 1) == 2.0
        assert win.entry(2, 0) == 0.0

    def test_exact_zero_entries_are_dropped(self):
        padded = InteractionWindow(lo=0, hi=1, entries={(0, 1): 1.0, (1, 0): 0.0})
        bare = InteractionWindow(lo=0, hi=1, entries={(0, 1): 1.0})
        assert padded == bare

    def test_dense_layout(self):
        win = build_pt_delta_pair(1, 1.0)
        expected = np.array([[0, -1, 0], [1, 0, 1], [0, -1, 0]], dtype=complex)
        assert np.array_equal(win.dense(), expected)

    def test_tridiagonal_detection(self):
        assert build_pt_delta_pair(3, 0.2).is_tridiagonal()
        assert not InteractionWindow(lo=0, hi=2, entries={(0, 2): 1.0}).is_tridiagonal()


class TestModelBuilders:
    def test_pair_m1_entries(self):
        win = build_pt_delta_pair(1, 0.5)
        assert win.lo == -1 and win.hi == 1
        assert win.entries == {(0, -1): 0.5, (0, 1): 0.5, (-1, 0): -0.5, (1, 0): -0.5}

    def test_pair_m3_entries(self):
        win = build_pt_delta_pair(3, 0.5)
        assert win.entries == {(-2, -3): 0.5, (2, 3): 0.5, (-3, -2): -0.5, (3, 2): -0.5}

    def test_pair_zero_coupling_is_empty(self):
        win = build_pt_delta_pair(2, 0.0)
        assert win.entries == {} and (win.lo, win.hi) == (-2, 2)

    def test_pair_rejects_nonpositive_separation(self):
        with pytest.raises(ValueError):
            build_pt_delta_pair(0, 0.5)

    def test_ultralocal_entries(self):
        assert build_ultralocal(0.5).entries == {(0, 1): -0.5, (1, 0): 0.5}
        assert build_ultralocal(-1.0).entries == {(0, 1): 1.0, (1, 0): -1.0}
        assert build_ultralocal(0.0).entries == {}


class TestPTSymmetry:
    @pytest.mark.parametrize("m_sep", range(1, 13))
    def test_delta_pair_always_symmetric(self, m_sep):
        rng = np.random.default_rng(42 + m_sep)
        for x in rng.uniform(-5.0, 5.0, size=100):
            assert is_pt_symmetric(build_pt_delta_pair(m_sep, float(x)))

    @pytest.mark.parametrize("a", [0.4, -0.7, 1.0])
    def test_ultralocal_never_symmetric(self, a):
        assert not is_pt_symmetric(build_ultralocal(a))

    def test_empty_window_is_symmetric(self):
        assert is_pt_symmetric(InteractionWindow(lo=-2, hi=2))

    def test_real_diagonal_at_origin_is_symmetric(self):
        assert is_pt_symmetric(InteractionWindow(lo=0, hi=0, entries={(0, 0): 0.7}))

    def test_complex_diagonal_at_origin_is_not(self):
        assert not is_pt_symmetric(InteractionWindow(lo=0, hi=0, entries={(0, 0): 0.7 + 0.1j}))

    def test_off_center_diagonal_is_not(self):
        assert not is_pt_symmetric(InteractionWindow(lo=0, hi=1, entries={(1, 1): 0.7}))

    def test_mirrored_complex_pair_is_symmetric(self):
        win = InteractionWindow(lo=-1, hi=1, entries={(1, 1): 0.3 + 0.2j, (-1, -1): 0.3 - 0.2j})
        assert is_pt_symmetric(win)

    def test_invariant_under_zero_padding(self):
        win = build_ultralocal(0.4)
        padded = InteractionWindow(lo=-1, hi=1, entries={(0, 1): -0.4, (1, 0): 0.4, (-1, -1): 0.0})
        assert is_pt_symmetric(win) == is_pt_symmetric(padded) == is_pt_symmetric(embed_symmetric(win))

    def test_first_violation_reports_lowest_pair(self):
        violation = first_pt_violation(build_ultralocal(0.4))
        assert violation is not None
        pair, value, mirror = violation
        assert pair == (0, 1)
        assert value == -0.4
        assert mirror == 0.0

    def test_pt_conjugate_is_an_involution(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            entries = {
                (int(rng.integers(-3, 4)), int(rng.integers(-3, 4))): complex(rng.normal(), rng.normal())
                for _ in range(5)
            }
            win = InteractionWindow(lo=-3, hi=3, entries=entries)
            assert pt_conjugate(pt_conjugate(win)) == embed_symmetric(win)


class TestModelFamily:
    def test_pair_roundtrip(self):
        model = ModelFamily.pt_delta_pair(2, 0.3)
        assert model.window() == build_pt_delta_pair(2, 0.3)
        assert model.coupling == 0.3
        assert not model.hops_zeroed

    def test_pair_flags_unit_coupling(self):
        assert ModelFamily.pt_delta_pair(1, 1.0).hops_zeroed
        assert ModelFamily.pt_delta_pair(1, -1.0).hops_zeroed

    def test_ultralocal_roundtrip(self):
        model = ModelFamily.ultralocal(-0.2)
        assert model.window() == build_ultralocal(-0.2)
        assert model.coupling == -0.2

    def test_custom_roundtrip(self):
        win = InteractionWindow(lo=0, hi=0, entries={(0, 0): 1.0})
        model = ModelFamily.custom_window(win)
        assert model.window() is win
        assert math.isnan(model.coupling)

    def test_validation(self):
        with pytest.raises(ValueError):
            ModelFamily(kind="pt-pair", m_sep=None, x=0.1)
        with pytest.raises(ValueError):
            ModelFamily(kind="ultralocal")
        with pytest.raises(ValueError):
            ModelFamily(kind="custom")
        with pytest.raises(ValueError):
            ModelFamily(kind="bogus")


class TestValueTypes:
    def test_amplitude_derived_fields(self):
        amps = ScatteringAmplitudes(R=3 / 5, T=4j / 5)
        assert amps.prob_reflected == pytest.approx(0.36)
        assert amps.prob_transmitted == pytest.approx(0.64)
        assert amps.prob_sum == pytest.approx(1.0)
        assert amps.defect == pytest.approx(0.0, abs=1e-15)

    def test_wavefunction_window_length_check(self):
        with pytest.raises(ValueError):
            WaveFunctionWindow(lo_ext=0, hi_ext=2, values=np.zeros(2, dtype=complex))

    def test_wavefunction_window_indexing(self):
        wf = WaveFunctionWindow(lo_ext=-1, hi_ext=1, values=np.array([1.0, 2.0, 3.0]))
        assert wf.value(-1) == 1.0 and wf.value(1) == 3.0
        with pytest.raises(IndexError):
            wf.value(2)
