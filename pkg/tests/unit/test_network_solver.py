"""
Tests para el solver de la física del circuito
Casos cerrados del divisor de tensión y propiedades sobre instancias aleatorias
"""
import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from app.core.exceptions import ShapeError, SingularLaplacianError
from app.domain.entities.circuit_graph import CircuitGraph, make_crossbar
from app.domain.services.instances import make_rng, random_instance
from app.domain.services.network_solver import (
    branch_voltages,
    branch_voltages_reduced,
    clamped_voltages,
    network_power,
    solve_network,
    solve_output_potentials,
    total_power,
)
from app.domain.value_objects.conductance import ConductanceVector


class TestSolveOutputPotentials:
    """Test suite para los potenciales del estado libre"""

    def test_divisor_simetrico(self, divider, unit_conductances):
        """Test: g = (1,1), p_I = (1,0) da p_O = 0.5"""
        # Act
        p_O = solve_output_potentials(divider, unit_conductances, [1.0, 0.0])

        # Assert
        np.testing.assert_allclose(p_O, [0.5], atol=1e-15)

    def test_divisor_asimetrico(self, divider):
        """Test: g = (2,1) da p_O = 2/3"""
        # Arrange
        g = ConductanceVector(np.array([2.0, 1.0]), 0.1)

        # Act
        p_O = solve_output_potentials(divider, g, [1.0, 0.0])

        # Assert
        np.testing.assert_allclose(p_O, [2.0 / 3.0], atol=1e-15)

    def test_salida_abierta(self):
        """Test: Una rama entrada-salida sin corriente copia el potencial"""
        # Arrange
        graph = make_crossbar(1, 1)
        g = ConductanceVector(np.array([0.7]), 0.1)

        # Act
        p_O = solve_output_potentials(graph, g, [3.0])

        # Assert
        np.testing.assert_allclose(p_O, [3.0])

    def test_grafo_disconexo(self):
        """Test: Un grafo disconexo lanza SingularLaplacianError con diagnósticos"""
        # Arrange
        graph = CircuitGraph(num_nodes=4, branches=((0, 1), (2, 3)), input_nodes=(0, 2), output_nodes=(1, 3))
        g = ConductanceVector.uniform(2, 1.0, 0.1)

        # Act & Assert
        with pytest.raises(SingularLaplacianError) as exc_info:
            solve_output_potentials(graph, g, [1.0, 0.0])

        assert exc_info.value.components == 2
        assert exc_info.value.num_nodes == 4

    def test_salida_aislada(self):
        """Test: Un nodo de salida sin ramas también es singular"""
        # Arrange
        graph = CircuitGraph(num_nodes=3, branches=((0, 1),), input_nodes=(0,), output_nodes=(1, 2))
        g = ConductanceVector.uniform(1, 1.0, 0.1)

        # Act & Assert
        with pytest.raises(SingularLaplacianError):
            solve_output_potentials(graph, g, [1.0])

    def test_dimension_incorrecta(self, divider, unit_conductances):
        """Test: p_I de longitud incorrecta lanza ShapeError"""
        with pytest.raises(ShapeError):
            solve_output_potentials(divider, unit_conductances, [1.0, 0.0, 0.0])

    def test_conductancias_de_longitud_incorrecta(self, divider):
        """Test: len(g) != B lanza ShapeError"""
        with pytest.raises(ShapeError):
            solve_output_potentials(divider, ConductanceVector.uniform(3, 1.0, 0.1), [1.0, 0.0])

    def test_residuo_del_sistema(self):
        """Test: ||L_O p_O + D_O G D_I^T p_I|| <= 1e-10 (1 + ||rhs||)"""
        # Arrange
        rng = make_rng(3)

        for _ in range(20):
            instance = random_instance(rng)
            graph, g = instance.graph, instance.g
            d_in, d_out = graph.partition_incidence()
            G = g.diagonal()
            rhs = -d_out @ G @ d_in.T @ instance.sample.p_I

            # Act
            p_O = solve_output_potentials(graph, g, instance.sample.p_I)

            # Assert
            residual = np.linalg.norm(d_out @ G @ d_out.T @ p_O - rhs)
            assert residual <= 1e-10 * (1.0 + np.linalg.norm(rhs))

    def test_camino_disperso_coincide(self):
        """Test: El camino disperso coincide con Cholesky denso"""
        # Arrange
        rng = make_rng(11)
        graph = make_crossbar(6, 5)
        g = ConductanceVector(rng.uniform(0.1, 10.0, graph.num_branches), 0.1)
        p_I = rng.uniform(-5.0, 5.0, graph.num_inputs)

        # Act
        dense = solve_output_potentials(graph, g, p_I)
        sparse = solve_output_potentials(graph, g, p_I, sparse=True)

        # Assert
        np.testing.assert_allclose(sparse, dense, rtol=0, atol=1e-10)

    def test_interpolacion_por_filas(self):
        """Test: Cada p_O está en [min p_I, max p_I]"""
        # Arrange
        rng = make_rng(5)

        for _ in range(30):
            instance = random_instance(rng)
            p_I = instance.sample.p_I

            # Act
            p_O = solve_output_potentials(instance.graph, instance.g, p_I)

            # Assert
            assert np.all(p_O >= p_I.min() - 1e-12)
            assert np.all(p_O <= p_I.max() + 1e-12)


class TestBranchVoltages:
    """Test suite para los voltajes de rama"""

    def test_divisor_simetrico(self, divider, unit_conductances):
        """Test: Caídas iguales v = (0.5, 0.5)"""
        # Act
        v = branch_voltages(divider, unit_conductances, [1.0, 0.0])

        # Assert
        np.testing.assert_allclose(v, [0.5, 0.5])

    def test_divisor_asimetrico(self, divider):
        """Test: g = (2,1) da v = (1/3, 2/3)"""
        # Act
        v = branch_voltages(divider, ConductanceVector(np.array([2.0, 1.0]), 0.1), [1.0, 0.0])

        # Assert
        np.testing.assert_allclose(v, [1.0 / 3.0, 2.0 / 3.0])

    def test_rama_abierta(self):
        """Test: Rama entrada-salida única tiene v = 0"""
        # Act
        v = branch_voltages(make_crossbar(1, 1), ConductanceVector.uniform(1, 2.0, 0.1), [3.0])

        # Assert
        np.testing.assert_allclose(v, [0.0], atol=1e-15)

    def test_formulas_equivalentes_y_kcl(self):
        """Test: Las dos fórmulas de v(g) coinciden y D_O G v = 0"""
        # Arrange
        rng = make_rng(17)

        for _ in range(30):
            instance = random_instance(rng)
            graph, g, p_I = instance.graph, instance.g, instance.sample.p_I
            _, d_out = graph.partition_incidence()

            # Act
            v = branch_voltages(graph, g, p_I)
            v_reduced = branch_voltages_reduced(graph, g, p_I)

            # Assert
            np.testing.assert_allclose(v, v_reduced, rtol=0, atol=1e-12)
            currents = g.values * v
            assert np.linalg.norm(d_out @ currents) <= 1e-10 * max(np.linalg.norm(currents), 1.0)

    @seed(1)
    @settings(max_examples=50, deadline=None)
    @given(scale=st.floats(min_value=1e-2, max_value=1e2))
    def test_invariancia_de_escala(self, scale):
        """Test: v(c g) = v(g) para c > 0"""
        # Arrange
        graph = make_crossbar(3, 2)
        g = ConductanceVector(np.array([1.0, 2.0, 0.5, 3.0, 1.5, 0.8]), 1e-3)
        p_I = np.array([1.0, -2.0, 0.5])

        # Act
        v = branch_voltages(graph, g, p_I)
        v_scaled = branch_voltages(graph, g.scaled(scale), p_I)

        # Assert
        np.testing.assert_allclose(v_scaled, v, rtol=1e-10, atol=1e-12)


class TestClampedVoltages:
    """Test suite para el estado clampeado"""

    def test_divisor(self, divider):
        """Test: p_I = (1,0), p_O^D = 2/3 da v^D = (1/3, 2/3)"""
        # Act
        v_desired = clamped_voltages(divider, [1.0, 0.0], [2.0 / 3.0])

        # Assert
        np.testing.assert_allclose(v_desired, [1.0 / 3.0, 2.0 / 3.0])

    def test_consistencia_con_estado_libre(self, divider, unit_conductances):
        """Test: Con p_O^D = p_O(g) el estado clampeado es el libre"""
        # Arrange
        p_O = solve_output_potentials(divider, unit_conductances, [1.0, 0.0])

        # Act
        v_desired = clamped_voltages(divider, [1.0, 0.0], p_O)

        # Assert
        np.testing.assert_allclose(v_desired, branch_voltages(divider, unit_conductances, [1.0, 0.0]))

    def test_potenciales_nulos(self, divider):
        """Test: Todo en cero da v^D = 0"""
        np.testing.assert_array_equal(clamped_voltages(divider, [0.0, 0.0], [0.0]), [0.0, 0.0])

    def test_dimension_incorrecta(self, divider):
        """Test: p_O^D de longitud incorrecta lanza ShapeError"""
        with pytest.raises(ShapeError):
            clamped_voltages(divider, [1.0, 0.0], [0.5, 0.5])


class TestPower:
    """Test suite para la potencia disipada"""

    def test_suma_directa(self, unit_conductances):
        """Test: g = (1,1), v = (0.5,0.5) da 0.5"""
        assert total_power(unit_conductances, [0.5, 0.5]) == pytest.approx(0.5)

    def test_cero(self, unit_conductances):
        """Test: v = 0 da potencia 0"""
        assert total_power(unit_conductances, [0.0, 0.0]) == 0.0

    def test_cuadratica(self, unit_conductances):
        """Test: Duplicar v cuadruplica la potencia"""
        # Arrange
        v = np.array([0.3, -1.2])

        # Act & Assert
        assert total_power(unit_conductances, 2 * v) == pytest.approx(4 * total_power(unit_conductances, v))

    def test_minima_potencia(self):
        """Test: S(p_I, p_O(g)) <= S(p_I, p_O(g) + delta) con ||delta|| = 0.1"""
        # Arrange
        rng = make_rng(23)

        for _ in range(20):
            instance = random_instance(rng, max_nodes=12)
            graph, g, p_I = instance.graph, instance.g, instance.sample.p_I
            state = solve_network(graph, g, p_I)

            for _ in range(100):
                delta = rng.normal(size=graph.num_outputs)
                delta *= 0.1 / np.linalg.norm(delta)

                # Act
                perturbed = network_power(graph, g, p_I, state.p_O + delta)

                # Assert
                assert state.power <= perturbed + 1e-12


class TestSolveNetwork:
    """Test suite para el estado libre completo"""

    def test_divisor(self, divider, unit_conductances):
        """Test: p_O, v, i, potencia y j_I del divisor simétrico"""
        # Act
        state = solve_network(divider, unit_conductances, [1.0, 0.0])

        # Assert
        np.testing.assert_allclose(state.p_O, [0.5])
        np.testing.assert_allclose(state.v, [0.5, 0.5])
        np.testing.assert_allclose(state.i, [0.5, 0.5])
        assert state.power == pytest.approx(0.5)
        np.testing.assert_allclose(state.j_I, [0.5, -0.5])

    def test_ley_de_ohm_y_potencia_no_negativa(self):
        """Test: i = G v y potencia >= 0 en instancias aleatorias"""
        # Arrange
        rng = make_rng(29)

        for _ in range(20):
            instance = random_instance(rng)

            # Act
            state = solve_network(instance.graph, instance.g, instance.sample.p_I)

            # Assert
            np.testing.assert_allclose(state.i, instance.g.values * state.v)
            assert state.power >= 0.0
            assert state.power == pytest.approx(total_power(instance.g, state.v))
