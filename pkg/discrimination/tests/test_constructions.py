import numpy as np
from django.test import SimpleTestCase

from discrimination.conf import SolverConfig
from discrimination.constructions import (
    PovmFamily, Provenance, data_hiding_pair, flag_basis_povm, flagged_to_state_pair,
    lo_vs_locc_delta, net_povm_family, random_rank1_povm, rank1_refinement, swap_operator,
    uniform_pair, werner_pair,
)
from discrimination.exceptions import CoverageError, RefusalError, ValidationError
from discrimination.hermitian import hs_norm, operator_norm, trace_norm
from discrimination.norms import FlaggedBlockOperator, Povm, all_norm, locc_one_way_exact_flagged, povm_norm
from discrimination.sampling import RngStream, gue_standard, haar_unitary, uniform_state
from discrimination.solvers import lo_norm_block_upper, locc_one_way_lower, one_way_value, ppt_norm


class WernerPairTests(SimpleTestCase):
    def test_swap_squares_to_identity(self):
        swap = swap_operator(3)
        np.testing.assert_allclose(swap @ swap, np.eye(9))

    def test_states_are_orthogonal(self):
        for d in (2, 3, 4):
            with self.subTest(d=d):
                pair = werner_pair(d)
                self.assertAlmostEqual(abs(np.trace(pair.rho.entries @ pair.sigma.entries)), 0.0, places=12)
                self.assertAlmostEqual(all_norm(pair.delta), 2.0, places=10)
                self.assertEqual(pair.provenance, Provenance.WERNER)
                self.assertEqual(pair.delta.bipartite_shape, (d, d))

    def test_local_unitary_invariance(self):
        d = 3
        u = haar_unitary(d, RngStream(31).generator())
        uu = np.kron(u, u)
        delta = werner_pair(d).delta.entries
        np.testing.assert_allclose(uu @ delta @ uu.conj().T, delta, atol=1e-12)

    def test_qubit_ppt_value(self):
        report = ppt_norm(werner_pair(2).delta)
        self.assertAlmostEqual(report.lower, 4 / 3, delta=1e-3)

    def test_needs_two_dimensions(self):
        with self.assertRaises(ValidationError):
            werner_pair(1)


class DataHidingTests(SimpleTestCase):
    def test_spectral_signature(self):
        rng = RngStream(32).generator()
        for d in (2, 4, 6):
            with self.subTest(d=d):
                delta = data_hiding_pair(d, rng).delta
                self.assertAlmostEqual(trace_norm(delta), 2.0, places=9)
                self.assertAlmostEqual(hs_norm(delta), 2 / d, places=9)
                self.assertAlmostEqual(operator_norm(delta), 2 / d ** 2, places=9)

    def test_odd_dimension_is_rejected(self):
        with self.assertRaises(ValidationError):
            data_hiding_pair(3, RngStream(0).generator())

    def test_restricted_norms_respect_the_hierarchy(self):
        cfg = SolverConfig(restarts=2, seesaw_iterations=10)
        for seed in (1, 2):
            with self.subTest(seed=seed):
                rng = RngStream(seed).generator()
                delta = data_hiding_pair(4, rng).delta
                report = ppt_norm(delta, cfg)
                locc, _ = locc_one_way_lower(delta, cfg, rng)
                self.assertLess(report.upper, 2.0)
                self.assertLessEqual(locc, report.upper + 1e-6)


class LoVsLoccTests(SimpleTestCase):
    def test_one_way_value_is_d_squared(self):
        rng = RngStream(33).generator()
        for d in (4, 8, 16):
            with self.subTest(d=d):
                blocks = lo_vs_locc_delta(d, rng)
                self.assertEqual(len(blocks), d)
                self.assertAlmostEqual(locc_one_way_exact_flagged(blocks), d * d, places=8)

    def test_blocks_are_balanced_reflections(self):
        blocks = lo_vs_locc_delta(4, RngStream(34).generator())
        for block in blocks.blocks:
            np.testing.assert_allclose(np.linalg.eigvalsh(block.entries), [-1, -1, 1, 1], atol=1e-10)

    def test_odd_dimension_is_rejected(self):
        with self.assertRaises(ValidationError):
            lo_vs_locc_delta(5, RngStream(0).generator())

    def test_lo_estimate_stays_below_one_way_value(self):
        cfg = SolverConfig(lo_restarts=10, lo_iterations=300)
        d = 8
        for seed in (1, 2, 3):
            with self.subTest(seed=seed):
                rng = RngStream(seed).generator()
                blocks = lo_vs_locc_delta(d, rng)
                estimate = lo_norm_block_upper(blocks, cfg, rng)
                self.assertLessEqual(estimate.value / d ** 1.5, 4.0)
                self.assertLessEqual(estimate.value, locc_one_way_exact_flagged(blocks) + 1e-9)


class FlaggedStatePairTests(SimpleTestCase):
    def test_expanded_pair(self):
        d = 4
        blocks = lo_vs_locc_delta(d, RngStream(35).generator())
        pair = flagged_to_state_pair(blocks)
        self.assertEqual(pair.provenance, Provenance.LO_VS_LOCC)
        self.assertAlmostEqual(abs(np.trace(pair.rho.entries @ pair.sigma.entries)), 0.0, places=10)
        self.assertAlmostEqual(one_way_value(pair.delta, flag_basis_povm(d)), 2.0, delta=1e-9)

    def test_blocks_without_a_negative_part_are_rejected(self):
        blocks = FlaggedBlockOperator((np.eye(2), np.diag([1.0, -1.0])))
        with self.assertRaises(ValidationError):
            flagged_to_state_pair(blocks)


class UniformPairTests(SimpleTestCase):
    def test_pair_is_valid(self):
        pair = uniform_pair(3, RngStream(36).generator())
        self.assertEqual(pair.provenance, Provenance.UNIFORM_RANDOM)
        self.assertEqual(pair.rho.dim, 9)
        self.assertLessEqual(all_norm(pair.delta), 2.0 + 1e-12)


class NetFamilyTests(SimpleTestCase):
    def test_certified_qubit_net(self):
        family = net_povm_family(2, 0.5, RngStream(37).generator())
        self.assertIsInstance(family, PovmFamily)
        self.assertLessEqual(len(family), 6 ** 4)
        self.assertEqual(family.net_points.shape, (len(family), 2, 2))

        rng = RngStream(38).generator()
        effects = np.stack([m.stacked for m in family.members])
        violations = 0
        for _ in range(200):
            delta = gue_standard(2, rng)
            best = np.abs(np.einsum('nkij,ji->nk', effects, delta.entries).real).sum(axis=1).max()
            violations += best < (1 - 0.5) * all_norm(delta)
        self.assertEqual(violations, 0)

    def test_uncovering_net_reports_a_witness(self):
        with self.assertRaises(CoverageError) as ctx:
            net_povm_family(2, 0.5, RngStream(39).generator(), mode='randomized', max_members=1)
        self.assertGreater(ctx.exception.distance, 0.5)
        self.assertEqual(ctx.exception.witness.shape, (2, 2))

    def test_randomized_qubit_net(self):
        family = net_povm_family(2, 0.9, RngStream(40).generator(), mode='randomized')
        self.assertLessEqual(len(family), (3 / 0.9) ** 4)
        self.assertEqual(family.epsilon, 0.9)

    def test_randomized_qutrit_net(self):
        family = net_povm_family(3, 0.7, RngStream(41).generator(), mode='randomized')
        self.assertGreater(len(family), 1)
        self.assertEqual(family.net_points.shape, (len(family), 3, 3))
        for point, member in zip(family.net_points, family.members):
            self.assertLess(np.abs(point - point.conj().T).max(), 1e-12)
            self.assertLessEqual(np.abs(np.linalg.eigvalsh(point)).max(), 1.0 + 1e-9)
            self.assertEqual((len(member), member.dim), (2, 3))
            np.testing.assert_allclose(member.stacked[0] - member.stacked[1], point, atol=1e-12)

    def test_refusals(self):
        with self.assertRaises(RefusalError):
            net_povm_family(4, 0.5)
        with self.assertRaises(RefusalError):
            net_povm_family(4, 0.5, mode='randomized')
        with self.assertRaises(ValidationError):
            net_povm_family(2, 1.5)
        with self.assertRaises(ValidationError):
            net_povm_family(2, 0.5, mode='greedy')


class RankOneTests(SimpleTestCase):
    def test_refining_a_basis_is_a_no_op(self):
        refined = rank1_refinement(flag_basis_povm(3))
        self.assertEqual(len(refined), 3)

    def test_full_rank_effects_split(self):
        a = np.diag([0.5, -0.5])
        m = Povm.from_arrays([(np.eye(2) + a) / 2, (np.eye(2) - a) / 2, np.zeros((2, 2))])
        refined = rank1_refinement(m)
        self.assertEqual(len(refined), 4)
        for effect in refined.stacked:
            self.assertEqual(np.linalg.matrix_rank(effect, tol=1e-10), 1)

    def test_refinement_cannot_lose_distinguishability(self):
        rng = RngStream(41).generator()
        m = Povm.from_arrays([np.eye(3) * 0.3, np.eye(3) * 0.7])
        delta = uniform_state(3, rng) - uniform_state(3, rng)
        self.assertGreaterEqual(povm_norm(delta, rank1_refinement(m)), povm_norm(delta, m) - 1e-12)

    def test_random_rank_one_povm(self):
        rng = RngStream(42).generator()
        m = random_rank1_povm(4, 3, rng)
        self.assertEqual(len(m), 12)
        np.testing.assert_allclose(m.stacked.sum(axis=0), np.eye(4), atol=1e-10)
        np.testing.assert_allclose(np.trace(m.stacked, axis1=1, axis2=2).real, np.full(12, 1 / 3))

    def test_many_bases_capture_part_of_the_trace_norm(self):
        rng = RngStream(43).generator()
        m = random_rank1_povm(8, 20, rng)
        delta = uniform_state(8, rng) - uniform_state(8, rng)
        ratio = povm_norm(delta, m) / trace_norm(delta)
        self.assertTrue(0.15 <= ratio <= 1.0 + 1e-12)

    def test_needs_a_basis(self):
        with self.assertRaises(ValidationError):
            random_rank1_povm(2, 0, RngStream(0).generator())
