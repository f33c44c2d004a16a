import random

import pytest

from evroute.aco import (
    AcoConfig,
    EmptyCandidates,
    MinimumOneIteration,
    PheromoneMatrix,
    construct_ant_tour,
    evaporate,
    run_aco,
    transition_probabilities,
)
from evroute.instance import generate_random_instance
from evroute.nearest_neighbor import nearest_neighbor_genome
from evroute.routing import evaluate_genome


class TestEvaporate:
    def test_halving(self):
        matrix = PheromoneMatrix(3, initial=1.0, tau_min=1e-4)
        evaporate(matrix, rho=0.5)
        assert matrix.tau[0][1] == 0.5

    def test_floor_holds(self):
        matrix = PheromoneMatrix(3, initial=1e-4, tau_min=1e-4)
        evaporate(matrix, rho=0.5)
        assert matrix.tau[1][2] == 1e-4

    def test_uniform_entries_stay_equal(self):
        matrix = PheromoneMatrix(4, initial=0.7, tau_min=1e-4)
        matrix.deposit(0, 1, 0.3)
        evaporate(matrix, rho=0.25)
        assert matrix.tau[0][2] == matrix.tau[2][3]
        assert matrix.tau[0][1] == matrix.tau[1][0]  # symmetry preserved


class TestTransitionProbabilities:
    def test_single_candidate(self, triangle):
        matrix = PheromoneMatrix(len(triangle.nodes), 1.0, 1e-4)
        assert transition_probabilities(matrix, 0, [2], 1.0, 2.0, triangle) == [1.0]

    def test_pheromone_ratio(self, make_instance):
        # equal distances, tau 1 vs 3, beta 0 -> 1:3 odds
        inst = make_instance([(2, 0, 1), (0, 2, 1)], battery=100.0)
        matrix = PheromoneMatrix(len(inst.nodes), 1.0, 1e-4)
        matrix.tau[0][2] = 3.0
        matrix.tau[2][0] = 3.0
        probs = transition_probabilities(matrix, 0, [1, 2], 1.0, 0.0, inst)
        assert probs[0] == pytest.approx(0.25, abs=1e-12)
        assert probs[1] == pytest.approx(0.75, abs=1e-12)

    def test_normalized(self):
        rng = random.Random(0)
        for seed in range(20):
            inst = generate_random_instance(8, 0, seed)
            matrix = PheromoneMatrix(len(inst.nodes), 1.0, 1e-4)
            for _ in range(10):
                a, b = rng.randrange(9), rng.randrange(9)
                matrix.deposit(a, b, rng.random())
            probs = transition_probabilities(matrix, 0, list(inst.customer_ids), 1.0, 2.0, inst)
            assert abs(sum(probs) - 1.0) <= 1e-12
            assert all(p >= 0.0 for p in probs)

    def test_zero_distance_floored(self, make_instance):
        inst = make_instance([(0, 0, 1), (3, 4, 1)], battery=100.0)  # customer on the depot
        matrix = PheromoneMatrix(len(inst.nodes), 1.0, 1e-4)
        probs = transition_probabilities(matrix, 0, [1, 2], 1.0, 2.0, inst)
        assert probs[0] > probs[1]
        assert abs(sum(probs) - 1.0) <= 1e-12

    def test_huge_beta_is_finite(self, triangle):
        matrix = PheromoneMatrix(len(triangle.nodes), 1.0, 1e-4)
        probs = transition_probabilities(matrix, 0, [1, 2], 1.0, 1e6, triangle)
        assert probs[0] == pytest.approx(1.0)

    def test_empty_candidates(self, triangle):
        matrix = PheromoneMatrix(len(triangle.nodes), 1.0, 1e-4)
        with pytest.raises(EmptyCandidates):
            transition_probabilities(matrix, 0, [], 1.0, 2.0, triangle)


class TestConstructTour:
    def test_single_customer_forced(self, make_instance):
        inst = make_instance([(9, 9, 1)], battery=100.0)
        matrix = PheromoneMatrix(len(inst.nodes), 1.0, 1e-4)
        tour = construct_ant_tour(matrix, inst, AcoConfig(seed=0), random.Random(0))
        assert tour == (1,)

    def test_always_a_permutation(self):
        rng = random.Random(7)
        for seed in range(20):
            inst = generate_random_instance(7, 2, seed)
            matrix = PheromoneMatrix(len(inst.nodes), 1.0, 1e-4)
            tour = construct_ant_tour(matrix, inst, AcoConfig(seed=0), rng)
            assert sorted(tour) == list(inst.customer_ids)

    def test_greedy_beta_tracks_nearest_neighbor(self):
        config = AcoConfig(beta=1e6, seed=0)
        for seed in range(10):
            inst = generate_random_instance(8, 2, seed)
            matrix = PheromoneMatrix(len(inst.nodes), 1.0, 1e-4)
            tour = construct_ant_tour(matrix, inst, config, random.Random(seed))
            assert tour == nearest_neighbor_genome(inst)


class TestRunAco:
    def test_zero_iterations_rejected(self, triangle):
        with pytest.raises(MinimumOneIteration):
            run_aco(triangle, AcoConfig(iterations=0))

    def test_history_non_increasing(self):
        inst = generate_random_instance(7, 2, seed=1)
        result = run_aco(inst, AcoConfig(ants=8, iterations=40, seed=2))
        assert len(result.history) == 40
        assert all(b <= a for a, b in zip(result.history, result.history[1:]))
        assert result.history[-1] == result.best.evaluation.fitness

    def test_seed_determinism(self):
        inst = generate_random_instance(7, 2, seed=4)
        config = AcoConfig(ants=6, iterations=30, seed=11)
        a = run_aco(inst, config)
        b = run_aco(inst, config)
        assert a.history == b.history
        assert a.best.genome == b.best.genome

    def test_best_is_permutation(self):
        inst = generate_random_instance(6, 1, seed=9)
        result = run_aco(inst, AcoConfig(ants=5, iterations=20, seed=3))
        assert sorted(result.best.genome) == list(inst.customer_ids)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            AcoConfig(rho=1.0).validate()
        with pytest.raises(ValueError):
            AcoConfig(ants=0).validate()
        with pytest.raises(ValueError):
            AcoConfig(alpha=-1.0).validate()
        AcoConfig().validate()


class TestReinforcement:
    def test_best_tour_arcs_rise_above_baseline(self):
        # one manual iteration: construct, evaporate, deposit along the best
        inst = generate_random_instance(6, 1, seed=5)
        config = AcoConfig(ants=5, rho=0.5, seed=8)
        initial = 0.02
        matrix = PheromoneMatrix(len(inst.nodes), initial, config.tau_min)
        rng = random.Random(config.seed)
        best_tour = None
        best_fitness = float("inf")
        for _ in range(config.ants):
            tour = construct_ant_tour(matrix, inst, config, rng)
            fitness = evaluate_genome(inst, tour).fitness
            if fitness < best_fitness:
                best_tour, best_fitness = tour, fitness
        evaporate(matrix, config.rho)
        baseline = matrix.tau[0][best_tour[0]]
        amount = 1.0 / best_fitness
        prev = 0
        for c in best_tour:
            matrix.deposit(prev, c, amount)
            prev = c
        matrix.deposit(prev, 0, amount)

        arcs = set()
        prev = 0
        for c in best_tour:
            arcs.add(frozenset((prev, c)))
            prev = c
        arcs.add(frozenset((prev, 0)))
        searchable = [0, *inst.customer_ids]
        for a in searchable:
            for b in searchable:
                if a == b:
                    continue
                if frozenset((a, b)) in arcs:
                    assert matrix.tau[a][b] > baseline
                else:
                    assert matrix.tau[a][b] == baseline
                assert matrix.tau[a][b] == matrix.tau[b][a]
                assert matrix.tau[a][b] >= config.tau_min
