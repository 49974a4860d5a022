import io

import numpy as np
from django.test import SimpleTestCase

from discrimination.exceptions import ValidationError
from discrimination.hermitian import (
    HermitianOperator, Spectrum, eig_hermitian, hs_inner, jordan_decompose, operator_norm,
    partial_trace, partial_transpose, project_order_interval, read_operator, sign_operator,
    trace_norm, write_operator,
)
from discrimination.sampling import RngStream, gue_standard


class HermitianOperatorTests(SimpleTestCase):
    def test_rejects_non_hermitian_input(self):
        with self.assertRaises(ValidationError):
            HermitianOperator(np.array([[0, 1], [0, 0]]))

    def test_rejects_non_square_and_bad_shape(self):
        with self.assertRaises(ValidationError):
            HermitianOperator(np.zeros((2, 3)))
        with self.assertRaises(ValidationError):
            HermitianOperator(np.eye(6), (4, 2))

    def test_entries_are_symmetrized_and_read_only(self):
        arr = np.array([[1.0, 2 + 1e-14j], [2, 3]])
        h = HermitianOperator(arr)
        np.testing.assert_array_equal(h.entries, h.entries.conj().T)
        with self.assertRaises(ValueError):
            h.entries[0, 0] = 5

    def test_arithmetic_keeps_shape(self):
        a = HermitianOperator(np.eye(4), (2, 2))
        b = a * 2.0 - a
        self.assertEqual(b.bipartite_shape, (2, 2))
        np.testing.assert_allclose(b.entries, np.eye(4))
        with self.assertRaises(ValidationError):
            a * 1j


class SpectralTests(SimpleTestCase):
    def setUp(self):
        self.rng = RngStream(7).generator()

    def test_eigendecomposition_reconstructs(self):
        h = gue_standard(5, self.rng)
        spectrum, vectors = eig_hermitian(h)
        self.assertTrue(np.all(np.diff(spectrum.values) <= 0))
        rebuilt = (vectors * spectrum.values) @ vectors.conj().T
        self.assertLess(np.abs(rebuilt - h.entries).max(), 1e-9)

    def test_spectrum_must_be_sorted(self):
        with self.assertRaises(ValidationError):
            Spectrum(np.array([0.0, 1.0]))

    def test_norm_relations(self):
        h = gue_standard(6, self.rng)
        self.assertLessEqual(operator_norm(h), trace_norm(h))
        self.assertAlmostEqual(hs_inner(h, h), np.linalg.norm(h.entries) ** 2, places=9)

    def test_jordan_parts_are_orthogonal(self):
        h = gue_standard(4, self.rng)
        parts = jordan_decompose(h)
        self.assertLess(np.abs(parts.positive_part.entries - parts.negative_part.entries - h.entries).max(), 1e-9)
        self.assertLess(abs(hs_inner(parts.positive_part, parts.negative_part)), 1e-9)

    def test_sign_operator_maps_zero_eigenvalues_to_plus_one(self):
        s = sign_operator(np.diag([2.0, 0.0, -1.0]))
        np.testing.assert_allclose(np.diag(s).real, [1.0, 1.0, -1.0])

    def test_order_interval_projection(self):
        h = HermitianOperator(np.diag([3.0, 0.5, -2.0]))
        clipped = project_order_interval(h, -1, 1)
        np.testing.assert_allclose(np.diag(clipped.entries).real, [1.0, 0.5, -1.0])
        with self.assertRaises(ValidationError):
            project_order_interval(h, 1, -1)


class BipartiteMapTests(SimpleTestCase):
    def setUp(self):
        rng = RngStream(3).generator()
        self.a = gue_standard(2, rng).entries
        self.b = gue_standard(3, rng).entries

    def test_partial_transpose_of_product(self):
        product = HermitianOperator(np.kron(self.a, self.b), (2, 3))
        expected = np.kron(self.a.T, self.b)
        self.assertLess(np.abs(partial_transpose(product).entries - expected).max(), 1e-12)

    def test_partial_transpose_is_an_involution(self):
        product = HermitianOperator(np.kron(self.a, self.b), (2, 3))
        twice = partial_transpose(partial_transpose(product))
        self.assertLess(np.abs(twice.entries - product.entries).max(), 1e-12)

    def test_partial_traces_of_product(self):
        product = HermitianOperator(np.kron(self.a, self.b), (2, 3))
        first = partial_trace(product, 'first')
        second = partial_trace(product, 'second')
        self.assertLess(np.abs(first.entries - np.trace(self.a) * self.b).max(), 1e-12)
        self.assertLess(np.abs(second.entries - np.trace(self.b) * self.a).max(), 1e-12)
        with self.assertRaises(ValidationError):
            partial_trace(product, 'third')

    def test_unshaped_operator_is_rejected(self):
        with self.assertRaises(ValidationError):
            partial_transpose(HermitianOperator(np.eye(4)))


class FixtureFormatTests(SimpleTestCase):
    def test_written_fixture_reads_back(self):
        h = gue_standard(4, RngStream(11).generator()).with_shape((2, 2))
        buffer = io.StringIO()
        write_operator(h, buffer)
        lines = buffer.getvalue().splitlines()
        self.assertEqual(lines[0], '4 2 2')
        self.assertEqual(len(lines), 1 + 10)
        buffer.seek(0)
        back = read_operator(buffer)
        self.assertEqual(back.bipartite_shape, (2, 2))
        np.testing.assert_array_equal(back.entries, h.entries)

    def test_truncated_fixture_is_rejected(self):
        with self.assertRaises(ValidationError):
            read_operator(io.StringIO('2 0 0\n0 0 1.0 0.0\n'))

    def test_imaginary_diagonal_is_rejected(self):
        text = '1 0 0\n0 0 1.0 0.5\n'
        with self.assertRaises(ValidationError):
            read_operator(io.StringIO(text))

    def test_unparseable_fields_are_rejected(self):
        for text in ('1 0 0\n0 0 abc 0\n', 'two 0 0\n', '1 0 0\nx 0 1.0 0.0\n'):
            with self.subTest(text=text), self.assertRaises(ValidationError):
                read_operator(io.StringIO(text))

    def test_non_positive_dimension_is_rejected(self):
        for header in ('0 0 0\n', '-1 0 0\n', '1 -1 0\n'):
            with self.subTest(header=header), self.assertRaises(ValidationError):
                read_operator(io.StringIO(header))
