from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
import math
import numpy as np

from discrimination import matcore
from discrimination.ensembles import Ensemble, make_double_em, make_em, make_mixed_em, rotation_gen, signal_vector
from discrimination.serializers import ensemble_from_dict, ensemble_serializer


class EnsembleTests(SimpleTestCase):

    def test_make_em(self):
        e = make_em(3)
        self.assertEqual(len(e), 3)
        self.assertEqual(e.dim, 2)
        for prior in e.priors:
            self.assertAlmostEqual(prior, 1 / 3)
        np.testing.assert_allclose(e.vectors[1].real, [math.cos(math.pi / 3), math.sin(math.pi / 3)])
        self.assertTrue(e.is_real)

    def test_make_em_m2_is_orthogonal_pair(self):
        e = make_em(2)
        self.assertAlmostEqual(abs(np.vdot(e.vectors[0], e.vectors[1])), 0.0)

    def test_invalid_m(self):
        for M in (0, 1, 361):
            with self.assertRaises(ValidationError) as cm:
                make_em(M)
            self.assertEqual(cm.exception.code, "invalid")

    def test_mixed_endpoints(self):
        pure = make_em(4)
        same = make_mixed_em(4, 0.0)
        for a, b in zip(pure.states, same.states):
            np.testing.assert_allclose(a, b)
        dead = make_mixed_em(4, 1.0)
        for state in dead.states:
            np.testing.assert_allclose(state, np.eye(2) / 2, atol=1e-15)

    def test_mixed_rejects_eps_outside_unit_interval(self):
        for eps in (-0.1, 1.5):
            with self.assertRaises(ValidationError):
                make_mixed_em(3, eps)

    def test_priors_must_sum_to_one(self):
        with self.assertRaises(ValidationError) as cm:
            Ensemble(states=[np.eye(2) / 2, np.eye(2) / 2], priors=[0.5, 0.6], dim=2)
        self.assertEqual(cm.exception.code, "invalid")

    def test_negative_prior_names_index(self):
        with self.assertRaises(ValidationError) as cm:
            Ensemble(states=[np.eye(2) / 2, np.eye(2) / 2], priors=[1.5, -0.5], dim=2)
        self.assertIn("Prior 1", cm.exception.message)

    def test_state_must_be_positive(self):
        bad = np.array([[1.5, 0], [0, -0.5]])
        with self.assertRaises(ValidationError) as cm:
            Ensemble(states=[np.eye(2) / 2, bad], priors=[0.5, 0.5], dim=2)
        self.assertEqual(cm.exception.code, "contract")
        self.assertIn("State 1", cm.exception.message)

    def test_double_em(self):
        e = make_double_em(3)
        self.assertEqual(e.dim, 4)
        for state in e.states:
            self.assertAlmostEqual(matcore.trace(state).real, 1.0)
            self.assertAlmostEqual(matcore.trace(state @ state).real, 1.0)

    def test_rotation_generator(self):
        for M in (2, 3, 5, 8):
            g = rotation_gen(M)
            np.testing.assert_allclose(g.power(M), -np.eye(2), atol=1e-12)
            for k in range(M):
                np.testing.assert_allclose(g.matrix @ signal_vector(M, k), signal_vector(M, k + 1), atol=1e-12)

    def test_rotation_maps_source_onto_itself(self):
        e = make_em(5)
        V = rotation_gen(5).matrix
        for k in range(5):
            rotated = V @ e.states[k] @ V.conj().T
            np.testing.assert_allclose(rotated, e.states[(k + 1) % 5], atol=1e-12)

    def test_json_round_trip(self):
        e = make_mixed_em(3, 0.25)
        loaded = ensemble_from_dict(ensemble_serializer(e))
        self.assertEqual(loaded.priors, e.priors)
        for a, b in zip(loaded.states, e.states):
            np.testing.assert_array_equal(a, b)

    def test_json_loader_reports_first_violation(self):
        data = ensemble_serializer(make_em(3))
        data["states"][2][0][0] = [2.0, 0.0]
        with self.assertRaises(ValidationError) as cm:
            ensemble_from_dict(data)
        self.assertIn("State 2", cm.exception.message)

    def test_json_loader_rejects_bad_shape(self):
        data = ensemble_serializer(make_em(3))
        data["states"][0] = [[1.0, 0.0]]
        with self.assertRaises(ValidationError) as cm:
            ensemble_from_dict(data)
        self.assertEqual(cm.exception.code, "conversion")

    def test_non_finite_priors_are_rejected(self):
        states = [np.eye(2) / 2] * 3
        for bad in (float("nan"), float("inf"), -float("inf")):
            with self.assertRaises(ValidationError) as cm:
                Ensemble(states=states, priors=[bad, 0.5, 0.5], dim=2)
            self.assertEqual(cm.exception.code, "invalid")
            self.assertIn("Prior 0", cm.exception.message)

    def test_json_loader_rejects_non_finite_priors(self):
        for bad in (float("nan"), float("inf")):
            data = ensemble_serializer(make_em(3))
            data["priors"][1] = bad
            with self.assertRaises(ValidationError) as cm:
                ensemble_from_dict(data)
            self.assertEqual(cm.exception.code, "conversion")
            self.assertIn("Prior 1", cm.exception.message)

    def test_vector_count_must_match_states(self):
        e = make_em(3)
        with self.assertRaises(ValidationError) as cm:
            Ensemble(states=e.states, priors=e.priors, dim=2, vectors=e.vectors[:2])
        self.assertEqual(cm.exception.code, "invalid")

    def test_consecutive_overlaps(self):
        for M in range(2, 9):
            e = make_em(M)
            for k in range(M - 1):
                overlap = abs(np.vdot(e.vectors[k], e.vectors[k + 1]))
                self.assertAlmostEqual(overlap, math.cos(math.pi / M), delta=1e-12)
