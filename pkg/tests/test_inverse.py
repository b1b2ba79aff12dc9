import numpy as np
import pytest

from sonophoton import DomainError
from sonophoton.homogeneous import photons_from_count_formula
from sonophoton.inverse import BranchPair, solve_n_in, sweep_figure1

from oracles import rel_err

# golden rows generated from the closed form at build time
GOLDEN_SWEEP = [
    (5.0, 0.03350360927244621, 746.1882627839835),
    (30.0, 13.428381853383785, 67.0222227686511),
    (60.0, 44.8562162619901, 80.25643489351863),
    (90.0, 76.79052268604241, 105.4817667164059),
]


class TestSolveNIn:
    def test_reference_pair_n_out_12(self):
        pair = solve_n_in(12.0, 1e6, 1.3, 15.0)
        assert rel_err(pair.n_in_low, 0.9545162237081105) < 1e-12
        assert rel_err(pair.n_in_high, 150.86176266400996) < 1e-12

    def test_reference_pair_n_out_25(self):
        pair = solve_n_in(25.0, 1e6, 1.3, 15.0)
        assert rel_err(pair.n_in_low, 8.853239009650653) < 1e-12
        assert rel_err(pair.n_in_high, 70.59563164607959) < 1e-12

    def test_back_substitution(self):
        pair = solve_n_in(25.0, 1e6, 1.3, 15.0)
        for root in (pair.n_in_low, pair.n_in_high):
            back = photons_from_count_formula(root, 25.0, 1.3, 15.0)
            assert rel_err(back, 1e6) < 1e-8

    def test_vieta_product(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n_out = float(rng.uniform(0.5, 120.0))
            target = float(10.0 ** rng.uniform(2.0, 8.0))
            pair = solve_n_in(n_out, target, 1.3, 15.0)
            assert rel_err(pair.n_in_low * pair.n_in_high, n_out**2) < 1e-10

    def test_branch_involution(self):
        # the two roots are exchanged by n_in -> n_out^2 / n_in
        pair = solve_n_in(40.0, 2.5e6, 1.2, 12.0)
        assert rel_err(40.0**2 / pair.n_in_high, pair.n_in_low) < 1e-12

    def test_vanishing_target_double_root(self):
        pair = solve_n_in(12.0, 1e-12, 1.3, 15.0)
        assert abs(pair.n_in_low / 12.0 - 1.0) < 1e-5
        assert abs(pair.n_in_high / 12.0 - 1.0) < 1e-5

    def test_discriminant_positive(self):
        pair = solve_n_in(12.0, 1e6, 1.3, 15.0)
        assert pair.discriminant > 0.0

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            solve_n_in(-1.0, 1e6)
        with pytest.raises(DomainError):
            solve_n_in(12.0, 0.0)

    def test_branch_pair_ordering_enforced(self):
        with pytest.raises(DomainError):
            BranchPair(n_in_low=2.0, n_in_high=1.0, discriminant=1.0)


class TestSweep:
    def test_contains_reference_points(self):
        rows = sweep_figure1(1e6, 1.3, 15.0, [12.0, 25.0])
        assert rel_err(rows[0][1], 0.9545162237081105) < 1e-12
        assert rel_err(rows[1][2], 70.59563164607959) < 1e-12

    def test_vieta_every_row(self):
        grid = list(np.linspace(1.0, 100.0, 34))
        for n_out, low, high in sweep_figure1(1e6, 1.3, 15.0, grid):
            assert rel_err(low * high, n_out**2) < 1e-10

    def test_golden_regression(self):
        grid = [row[0] for row in GOLDEN_SWEEP]
        rows = sweep_figure1(1e6, 1.3, 15.0, grid)
        for got, want in zip(rows, GOLDEN_SWEEP):
            assert rel_err(got[1], want[1]) < 1e-12
            assert rel_err(got[2], want[2]) < 1e-12

    def test_rejects_unsorted_grid(self):
        with pytest.raises(DomainError):
            sweep_figure1(1e6, 1.3, 15.0, [2.0, 1.0])
