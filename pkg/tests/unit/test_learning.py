"""
Tests para el núcleo de Contrastive Learning
Proyección, h, Q, paso T(g), cota K, drivers y validación de schedules
"""
import logging

import numpy as np
import pytest

from app.core.exceptions import InvalidArgumentError, InvalidConductanceError
from app.domain.entities.circuit_graph import make_crossbar
from app.domain.entities.run_trace import RunStatus
from app.domain.entities.training import TrainingSample, TrainingSet
from app.domain.services.instances import (
    hidden_conductances,
    make_rng,
    ramp_inputs,
    random_instance,
    realized_training_set,
    uniform_inputs,
)
from app.domain.services.learning import (
    branch_update,
    cl_step,
    cost_q,
    lipschitz_bound_K,
    project_c_eps,
    run_batch_cl,
    run_contrastive_learning,
    run_stochastic_cl,
    stochastic_bound_K,
    surrogate_gradient_h,
    target_in_input_range,
    validate_schedule,
)
from app.domain.services.network_solver import solve_network
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.learning_config import LearningConfig
from app.domain.value_objects.step_schedule import ConstantSchedule, PowerLawSchedule


@pytest.fixture
def divider_target() -> ConductanceVector:
    """g^D = (2, 1) realiza p_O^D = 2/3"""
    return ConductanceVector(np.array([2.0, 1.0]), 0.1)


class TestProjection:
    """Test suite para la proyección sobre C_eps"""

    def test_recorta_por_debajo(self):
        """Test: g = (0.05, 3.0), eps = 0.1 da (0.1, 3.0)"""
        # Act
        projected = project_c_eps(np.array([0.05, 3.0]), 0.1)

        # Assert
        np.testing.assert_array_equal(projected.values, [0.1, 3.0])

    def test_identidad_sobre_el_conjunto(self):
        """Test: g en C_eps no cambia"""
        # Arrange
        g = np.array([0.1, 2.5, 7.0])

        # Act
        projected = project_c_eps(g, 0.1)

        # Assert
        np.testing.assert_array_equal(projected.values, g)

    def test_valor_negativo(self):
        """Test: g = (-5) da (0.1)"""
        np.testing.assert_array_equal(project_c_eps(np.array([-5.0]), 0.1).values, [0.1])

    def test_idempotente(self):
        """Test: P(P(g)) = P(g)"""
        # Arrange
        g = make_rng(1).normal(size=50)

        # Act
        once = project_c_eps(g, 0.1)
        twice = project_c_eps(once.values, 0.1)

        # Assert
        np.testing.assert_array_equal(once.values, twice.values)

    def test_epsilon_invalido(self):
        """Test: eps <= 0 lanza InvalidArgumentError"""
        with pytest.raises(InvalidArgumentError):
            project_c_eps(np.array([1.0]), 0.0)


class TestSurrogateGradientAndCost:
    """Test suite para h(g) y Q(g)"""

    def test_h_divisor(self, divider, divider_sample, unit_conductances):
        """Test: h = (1/9 - 1/4, 4/9 - 1/4) = (-5/36, 7/36)"""
        # Act
        h = surrogate_gradient_h(divider, unit_conductances, divider_sample)

        # Assert
        np.testing.assert_allclose(h, [-5.0 / 36.0, 7.0 / 36.0], atol=1e-15)

    def test_h_nulo_en_la_solucion(self, divider, divider_sample, divider_target):
        """Test: h(g^D) = 0 y h(beta g^D) = 0 para beta > 1"""
        # Act
        at_target = surrogate_gradient_h(divider, divider_target, divider_sample)
        scaled = surrogate_gradient_h(divider, divider_target.scaled(3.5), divider_sample)

        # Assert
        np.testing.assert_allclose(at_target, 0.0, atol=1e-15)
        np.testing.assert_allclose(scaled, 0.0, atol=1e-15)

    def test_q_divisor(self, divider, divider_sample, unit_conductances):
        """Test: Q = (1/9 + 4/9) - (1/4 + 1/4) = 1/18"""
        assert cost_q(divider, unit_conductances, divider_sample) == pytest.approx(1.0 / 18.0)

    def test_q_nulo_en_la_solucion(self, divider, divider_sample, divider_target):
        """Test: Q = 0 cuando p_O(g) = p_O^D"""
        assert cost_q(divider, divider_target, divider_sample) == pytest.approx(0.0, abs=1e-15)

    def test_q_no_negativo(self):
        """Test: Q >= 0 en instancias aleatorias (mínima potencia)"""
        # Arrange
        rng = make_rng(31)

        for _ in range(200):
            instance = random_instance(rng)

            # Act
            q = cost_q(instance.graph, instance.g, instance.sample)

            # Assert
            assert q >= -1e-12
            assert cost_q(instance.graph, instance.target, instance.sample) == pytest.approx(0.0, abs=1e-10)


class TestClStep:
    """Test suite para un paso T(g)"""

    def test_divisor(self, divider, divider_sample, unit_conductances):
        """Test: gamma = 0.1 da g+ = (1 + 5/360, 1 - 7/360)"""
        # Act
        g_next = cl_step(divider, unit_conductances, divider_sample, 0.1)

        # Assert
        np.testing.assert_allclose(g_next.values, [1.0 + 5.0 / 360.0, 1.0 - 7.0 / 360.0])

    def test_punto_fijo_interior(self, divider, divider_sample, divider_target):
        """Test: T(g*) = g* si p_O(g*) = p_O^D y g* es interior"""
        # Act
        g_next = cl_step(divider, divider_target, divider_sample, 0.5)

        # Assert
        np.testing.assert_allclose(g_next.values, divider_target.values, rtol=0, atol=1e-15)

    def test_paso_enorme_recorta_a_epsilon(self, divider, divider_sample, unit_conductances):
        """Test: Una coordenada que cae bajo eps queda exactamente en eps"""
        # Act
        g_next = cl_step(divider, unit_conductances, divider_sample, 100.0)

        # Assert
        assert g_next.values[1] == 0.1
        assert g_next.values[0] > 1.0

    def test_gamma_no_positivo(self, divider, divider_sample, unit_conductances):
        """Test: gamma <= 0 lanza InvalidArgumentError"""
        with pytest.raises(InvalidArgumentError):
            cl_step(divider, unit_conductances, divider_sample, 0.0)

    def test_regla_local_por_rama(self):
        """Test: Cada coordenada se obtiene solo con g_k, v_k y v_k^D"""
        # Arrange
        rng = make_rng(37)
        instance = random_instance(rng)
        gamma = 0.3
        v = solve_network(instance.graph, instance.g, instance.sample.p_I).v

        # Act
        g_next = cl_step(instance.graph, instance.g, instance.sample, gamma)
        local = [
            branch_update(g_k, v_k, vd_k, gamma, instance.g.epsilon)
            for g_k, v_k, vd_k in zip(instance.g.values, v, instance.sample.v_desired)
        ]

        # Assert
        np.testing.assert_allclose(g_next.values, local, rtol=0, atol=1e-15)


class TestLipschitzBound:
    """Test suite para la constante K"""

    def test_crossbar_40x30(self):
        """Test: p_I = 1..40, eps = 0.1 da 2/K = 8.9564e-11"""
        # Arrange
        graph = make_crossbar(40, 30)

        # Act
        K = lipschitz_bound_K(graph, ramp_inputs(40), 0.1)

        # Assert
        assert 2.0 / K == pytest.approx(8.9564e-11, rel=1e-4)

    def test_divisor(self, divider):
        """Test: ||D_I|| = 1, ||D_O|| = sqrt(2), N_I N_O = 2 da K = 180"""
        assert lipschitz_bound_K(divider, [1.0, 0.0], 0.1) == pytest.approx(180.0)

    def test_homogeneidad_en_p_I(self, small_crossbar):
        """Test: Escalar p_I por c escala K por c^2"""
        # Arrange
        p_I = np.array([1.0, -0.5, 2.0])

        # Act
        base = lipschitz_bound_K(small_crossbar, p_I, 0.1)
        scaled = lipschitz_bound_K(small_crossbar, 3.0 * p_I, 0.1)

        # Assert
        assert scaled == pytest.approx(9.0 * base)

    def test_k_max_estocastico(self, divider):
        """Test: K_max es el máximo sobre las muestras"""
        # Arrange
        samples = TrainingSet.of([
            TrainingSample.from_potentials(divider, [1.0, 0.0], [0.5]),
            TrainingSample.from_potentials(divider, [2.0, 0.0], [0.5]),
        ])

        # Act
        K_max = stochastic_bound_K(divider, samples, 0.1)

        # Assert
        assert K_max == pytest.approx(720.0)

    def test_rango_de_entradas(self, divider, divider_sample):
        """Test: p_O^D fuera de [min p_I, max p_I] es inalcanzable"""
        # Arrange
        outside = TrainingSample.from_potentials(divider, [1.0, 0.0], [2.0])

        # Act & Assert
        assert target_in_input_range(divider_sample)
        assert not target_in_input_range(outside)


class TestRunContrastiveLearning:
    """Test suite para el driver determinista"""

    def test_converge_en_t_cero_desde_la_solucion(self, divider, divider_sample, divider_target):
        """Test: g0 = g^D converge sin aplicar pasos"""
        # Arrange
        config = LearningConfig(gamma=0.01, epsilon=0.1)

        # Act
        trace = run_contrastive_learning(divider, divider_target, divider_sample, config)

        # Assert
        assert trace.status == RunStatus.CONVERGED
        assert len(trace.records) == 1
        assert trace.iterations == 0

    def test_converge_en_el_divisor(self, divider, divider_sample, unit_conductances):
        """Test: El error cae bajo la tolerancia y p_O alcanza 2/3"""
        # Arrange
        config = LearningConfig(gamma=1.0, epsilon=0.1, max_iterations=500, stop_tolerance=1e-10)

        # Act
        trace = run_contrastive_learning(divider, unit_conductances, divider_sample, config)

        # Assert
        assert trace.converged
        assert trace.final_error <= 1e-10
        assert len(trace.records) <= config.max_iterations + 1
        assert trace.records[0].error == pytest.approx(2.0 / 3.0 - 0.5)

    def test_residuo_no_creciente_bajo_2_sobre_K(self):
        """Test: Con gamma = 1/K el residuo ||g^{t+1} - g^t|| no crece"""
        # Arrange
        rng = make_rng(41)

        for _ in range(5):
            instance = random_instance(rng)
            K = lipschitz_bound_K(instance.graph, instance.sample.p_I, 0.1)
            config = LearningConfig(gamma=1.0 / K, epsilon=0.1, max_iterations=200, stop_tolerance=0.0)

            # Act
            trace = run_contrastive_learning(instance.graph, instance.g, instance.sample, config)

            # Assert
            assert np.all(np.diff(trace.residuals()) <= 1e-12)

    def test_max_iteraciones(self, divider, divider_sample, unit_conductances):
        """Test: Sin alcanzar la tolerancia registra max_iterations + 1 filas"""
        # Arrange
        config = LearningConfig(gamma=1e-4, epsilon=0.1, max_iterations=10, stop_tolerance=0.0)

        # Act
        trace = run_contrastive_learning(divider, unit_conductances, divider_sample, config)

        # Assert
        assert trace.status == RunStatus.MAX_ITERATIONS
        assert len(trace.records) == 11
        assert trace.iterations == 10
        assert trace.records[-1].residual is None
        assert all(r.sample_index is None for r in trace.records)

    def test_arranque_fuera_de_c_eps(self, divider, divider_sample):
        """Test: g0 por debajo de la eps de la configuración"""
        # Arrange
        g0 = ConductanceVector(np.array([0.05, 1.0]), 0.01)
        config = LearningConfig(gamma=0.1, epsilon=0.1)

        # Act & Assert
        with pytest.raises(InvalidConductanceError):
            run_contrastive_learning(divider, g0, divider_sample, config)

    def test_fallo_del_solver_devuelve_traza_parcial(self, divider, divider_sample, unit_conductances):
        """Test: Un error a mitad de corrida termina con estado ERROR"""
        # Arrange
        config = LearningConfig(gamma=0.1, epsilon=0.1, max_iterations=10)

        def failing_projection(g, eps):
            return ConductanceVector(g, 10.0)

        # Act
        trace = run_contrastive_learning(divider, unit_conductances, divider_sample, config, failing_projection)

        # Assert
        assert trace.status == RunStatus.ERROR
        assert len(trace.records) == 1
        assert trace.message

    def test_advierte_gamma_sobre_2_sobre_K(self, divider, divider_sample, unit_conductances, caplog):
        """Test: gamma >= 2/K genera una advertencia"""
        # Arrange
        config = LearningConfig(gamma=1.0, epsilon=0.1, max_iterations=5)

        # Act
        with caplog.at_level(logging.WARNING):
            run_contrastive_learning(divider, unit_conductances, divider_sample, config)

        # Assert
        assert "2/K" in caplog.text

    def test_guarda_conductancias_con_stride(self, divider, divider_sample, unit_conductances):
        """Test: conductance_stride = 2 guarda g^t en t par"""
        # Arrange
        config = LearningConfig(gamma=0.1, epsilon=0.1, max_iterations=4, stop_tolerance=0.0, conductance_stride=2)

        # Act
        trace = run_contrastive_learning(divider, unit_conductances, divider_sample, config)

        # Assert
        kept = [r.t for r in trace.records if r.conductances is not None]
        assert kept == [0, 2, 4]
        np.testing.assert_array_equal(trace.records[0].conductances, [1.0, 1.0])


class TestRunBatchCl:
    """Test suite para la variante batch"""

    def test_una_muestra_coincide_con_determinista(self, divider, divider_sample, unit_conductances):
        """Test: Con n = 1 la traza es la del driver determinista"""
        # Arrange
        config = LearningConfig(gamma=0.5, epsilon=0.1, max_iterations=25, stop_tolerance=0.0)

        # Act
        batch = run_batch_cl(divider, unit_conductances, TrainingSet.of([divider_sample]), config)
        single = run_contrastive_learning(divider, unit_conductances, divider_sample, config)

        # Assert
        np.testing.assert_array_equal(batch.errors(), single.errors())

    def test_error_medio_decrece(self, divider, unit_conductances):
        """Test: Dos muestras realizadas por g^D = (2,1) se aprenden a la vez"""
        # Arrange
        samples = TrainingSet.of([
            TrainingSample.from_potentials(divider, [1.0, 0.0], [2.0 / 3.0]),
            TrainingSample.from_potentials(divider, [0.0, 1.0], [1.0 / 3.0]),
        ])
        config = LearningConfig(gamma=1.0, epsilon=0.1, max_iterations=200, stop_tolerance=1e-10)

        # Act
        trace = run_batch_cl(divider, unit_conductances, samples, config)

        # Assert
        assert trace.converged
        assert trace.records[0].error == pytest.approx(1.0 / 6.0)
        assert trace.final_error < trace.records[0].error


class TestRunStochasticCl:
    """Test suite para el driver estocástico"""

    def test_una_muestra_coincide_con_determinista(self, divider, divider_sample, unit_conductances):
        """Test: n = 1 y paso constante reproducen la trayectoria determinista"""
        # Arrange
        config = LearningConfig(gamma=0.5, epsilon=0.1, max_iterations=25, stop_tolerance=0.0)

        # Act
        stochastic = run_stochastic_cl(divider, unit_conductances, TrainingSet.of([divider_sample]), config)
        deterministic = run_contrastive_learning(divider, unit_conductances, divider_sample, config)

        # Assert
        np.testing.assert_array_equal(stochastic.errors(), deterministic.errors())
        np.testing.assert_array_equal(stochastic.residuals(), deterministic.residuals())
        assert {r.sample_index for r in stochastic.records[:-1]} == {0}

    def _problem(self, seed: int):
        rng = make_rng(seed)
        instance = random_instance(rng)
        inputs = uniform_inputs(instance.graph.num_inputs, 5, rng, -1.0, 1.0)
        return instance, realized_training_set(instance.graph, instance.target, inputs)

    def test_determinista_con_semilla(self):
        """Test: Misma semilla, misma secuencia de muestras y misma traza"""
        # Arrange
        instance, samples = self._problem(47)
        config = LearningConfig(
            schedule=PowerLawSchedule(10.0, 1.0), epsilon=0.1, max_iterations=40, stop_tolerance=0.0, rng_seed=2024
        )

        # Act
        first = run_stochastic_cl(instance.graph, instance.g, samples, config)
        second = run_stochastic_cl(instance.graph, instance.g, samples, config)

        # Assert
        assert first.to_frame().equals(second.to_frame())
        assert len({r.sample_index for r in first.records[:-1]}) > 1

    def test_gamma_registrado_sigue_el_schedule(self):
        """Test: Cada registro guarda gamma_t = a/(1+t)^p"""
        # Arrange
        instance, samples = self._problem(53)
        schedule = PowerLawSchedule(10.0, 1.0)
        config = LearningConfig(schedule=schedule, epsilon=0.1, max_iterations=10, stop_tolerance=0.0)

        # Act
        trace = run_stochastic_cl(instance.graph, instance.g, samples, config)

        # Assert
        assert [r.gamma for r in trace.records[:-1]] == [schedule(t) for t in range(10)]

    def test_sin_error_medio_no_para_por_tolerancia(self):
        """Test: Con track_mean_error = False se agotan las iteraciones"""
        # Arrange
        instance, samples = self._problem(59)
        config = LearningConfig(
            gamma=0.5, epsilon=0.1, max_iterations=15, stop_tolerance=1e3, track_mean_error=False
        )

        # Act
        trace = run_stochastic_cl(instance.graph, instance.g, samples, config)

        # Assert
        assert trace.status == RunStatus.MAX_ITERATIONS
        assert len(trace.records) == 16

    def test_schedule_creciente_rechazado(self, divider, divider_sample, unit_conductances):
        """Test: Un schedule creciente no cumple la precondición"""
        # Arrange
        config = LearningConfig(schedule=lambda t: 0.1 * (1 + t), epsilon=0.1, max_iterations=5)

        # Act & Assert
        with pytest.raises(InvalidArgumentError):
            run_stochastic_cl(divider, unit_conductances, TrainingSet.of([divider_sample]), config)


class TestValidateSchedule:
    """Test suite para validate_schedule"""

    def test_ley_armonica(self):
        """Test: 10/(1+t) cumple ambas condiciones"""
        # Act
        diagnostics = validate_schedule(PowerLawSchedule(10.0, 1.0), 100)

        # Assert
        assert diagnostics.satisfies_conditions
        assert diagnostics.warnings == []

    def test_constante_advierte(self):
        """Test: gamma_t = c tiene sum gamma_t^2 = inf"""
        # Act
        diagnostics = validate_schedule(ConstantSchedule(0.5), 100)

        # Assert
        assert diagnostics.usable
        assert diagnostics.square_summable is False
        assert not diagnostics.satisfies_conditions
        assert diagnostics.warnings

    def test_cuadratica_advierte(self):
        """Test: 1/(1+t)^2 tiene sum gamma_t < inf"""
        # Act
        diagnostics = validate_schedule(PowerLawSchedule(1.0, 2.0), 100)

        # Assert
        assert diagnostics.divergent_sum is False
        assert diagnostics.warnings

    def test_callable_arbitrario(self):
        """Test: Una función sin familia conocida no decide las sumas"""
        # Act
        diagnostics = validate_schedule(lambda t: 1.0 / (2 + t), 50)

        # Assert
        assert diagnostics.usable
        assert diagnostics.divergent_sum is None
        assert diagnostics.warnings

    def test_no_positivo(self):
        """Test: Valores no positivos invalidan el schedule"""
        # Act
        diagnostics = validate_schedule(lambda t: 1.0 - 0.5 * t, 5)

        # Assert
        assert not diagnostics.positive
        assert not diagnostics.usable

    def test_horizonte_invalido(self):
        """Test: horizon < 1 lanza InvalidArgumentError"""
        with pytest.raises(InvalidArgumentError):
            validate_schedule(ConstantSchedule(1.0), 0)


class TestHiddenConductances:
    """Test suite para la red oculta que genera los objetivos"""

    def test_extremo_inferior_por_defecto(self):
        """Test: Sin low los valores quedan en (eps, high]"""
        # Act
        target = hidden_conductances(500, 0.1, make_rng(3))

        # Assert
        assert target.values.min() > 0.1
        assert target.values.max() <= 10.0

    def test_extremo_inferior_explicito(self):
        """Test: low = 5 restringe los valores a (5, 10]"""
        # Act
        target = hidden_conductances(500, 0.1, make_rng(3), high=10.0, low=5.0)

        # Assert
        assert target.values.min() > 5.0
        assert target.values.max() <= 10.0

    def test_low_igual_a_eps_reproduce_el_defecto(self):
        """Test: low = eps consume el generador igual que sin low"""
        # Act
        implicit = hidden_conductances(20, 0.1, make_rng(8))
        explicit = hidden_conductances(20, 0.1, make_rng(8), low=0.1)

        # Assert
        np.testing.assert_array_equal(implicit.values, explicit.values)

    @pytest.mark.parametrize("low, high", [(0.05, 10.0), (10.0, 10.0), (12.0, 10.0)])
    def test_rango_invalido(self, low, high):
        """Test: low < eps o high <= low lanzan InvalidArgumentError"""
        with pytest.raises(InvalidArgumentError):
            hidden_conductances(5, 0.1, make_rng(0), high=high, low=low)
