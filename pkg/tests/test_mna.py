import math

import pytest

from dakit import (
    Capacitor,
    DesignError,
    DesignOptions,
    Inductor,
    Network,
    Port,
    Resistor,
    SimulationError,
    TransistorModel,
    TwoPortSweep,
    Vccs,
    build_network,
    extract_metrics,
    s_parameters_at,
    sweep,
    synthesize_design,
)

# matched symmetric pi attenuator, voltage ratio A: shunt z0(A+1)/(A-1),
# series z0(A^2-1)/(2A); reflectionless with |S21| = 1/A by construction
def pi_pad(a: float = 2.0, z0: float = 50.0) -> Network:
    r_shunt = z0 * (a + 1.0) / (a - 1.0)
    r_series = z0 * (a * a - 1.0) / (2.0 * a)
    return Network(
        node_count=3,
        elements=(
            Resistor(1, 0, r_shunt),
            Resistor(1, 2, r_series),
            Resistor(2, 0, r_shunt),
        ),
        port1=Port(1, z0),
        port2=Port(2, z0),
    )


def lc_ladder(n: int = 4, henries: float = 2.5e-9, farads: float = 1e-12) -> Network:
    # passive T-section chain, matched terminations left to the ports
    nodes = list(range(1, n + 2))
    elements: list = []
    for i, (a, b) in enumerate(zip(nodes, nodes[1:])):
        half = i == 0 or i == n - 1
        elements.append(Inductor(a, b, henries / 2.0 if half else henries))
    for node in nodes[1:-1] if n > 1 else nodes:
        elements.append(Capacitor(node, 0, farads))
    return Network(
        node_count=n + 2,
        elements=tuple(elements),
        port1=Port(1, 50.0),
        port2=Port(nodes[-1], 50.0),
    )


def proto_amp():
    t = TransistorModel(name="PROTO", gm=0.05, cgs=1e-12, cds=1e-12)
    from dakit import Substrate

    sub = Substrate(er=4.4, h_mm=1.6, t_mm=0.035)
    return synthesize_design(t, sub, DesignOptions(stages=4))


class TestNetworkValidation:
    def test_needs_two_nodes(self):
        with pytest.raises(DesignError):
            Network(1, (), Port(0), Port(0))

    def test_port_range_and_ground(self):
        r = (Resistor(1, 0, 50.0),)
        with pytest.raises(DesignError):
            Network(3, r, Port(0), Port(1))
        with pytest.raises(DesignError):
            Network(3, r, Port(1), Port(5))

    def test_ports_distinct(self):
        with pytest.raises(DesignError):
            Network(2, (Resistor(1, 0, 50.0),), Port(1), Port(1))

    def test_port_impedance_positive(self):
        with pytest.raises(DesignError):
            Network(3, (Resistor(1, 0, 50.0), Resistor(2, 0, 50.0)), Port(1, 0.0), Port(2))

    def test_element_values_positive(self):
        with pytest.raises(DesignError):
            Network(3, (Resistor(1, 0, -1.0), Resistor(2, 0, 50.0)), Port(1), Port(2))
        with pytest.raises(DesignError):
            Network(3, (Capacitor(1, 0, 0.0), Resistor(2, 0, 50.0)), Port(1), Port(2))

    def test_self_loop_rejected(self):
        with pytest.raises(DesignError):
            Network(3, (Resistor(1, 1, 50.0), Resistor(2, 0, 50.0)), Port(1), Port(2))

    def test_element_nodes_in_range(self):
        with pytest.raises(DesignError):
            Network(3, (Resistor(1, 7, 50.0),), Port(1), Port(2))
        with pytest.raises(DesignError):
            Network(3, (Vccs(1, 0, 9, 0, 0.01), Resistor(1, 0, 50.0), Resistor(2, 0, 50.0)), Port(1), Port(2))

    def test_unknown_element_rejected(self):
        with pytest.raises(DesignError):
            Network(3, ("not an element",), Port(1), Port(2))

    def test_floating_port_rejected(self):
        # node 2 is only driven by the vccs; no passive path to ground
        with pytest.raises(DesignError):
            Network(
                3,
                (Resistor(1, 0, 50.0), Vccs(2, 0, 1, 0, 0.05)),
                Port(1),
                Port(2),
            )


class TestSParameters:
    def test_rejects_nonpositive_frequency(self):
        with pytest.raises(SimulationError):
            s_parameters_at(pi_pad(), 0.0)

    def test_matched_attenuator(self):
        s = s_parameters_at(pi_pad(a=2.0), 1e9)
        assert abs(s[0][0]) < 1e-12
        assert abs(s[1][1]) < 1e-12
        assert math.isclose(abs(s[1][0]), 0.5, rel_tol=1e-12)
        assert math.isclose(abs(s[0][1]), 0.5, rel_tol=1e-12)

    def test_attenuator_depth_sweep(self):
        for a in (1.5, 2.0, 4.0, 10.0):
            s = s_parameters_at(pi_pad(a=a), 2e9)
            assert abs(s[0][0]) < 1e-12
            assert math.isclose(abs(s[1][0]), 1.0 / a, rel_tol=1e-12)

    def test_no_internal_nodes_branch(self):
        net = Network(
            3,
            (Resistor(1, 0, 50.0), Resistor(1, 2, 100.0), Resistor(2, 0, 50.0)),
            Port(1),
            Port(2),
        )
        s = s_parameters_at(net, 1e9)
        assert abs(s[0][1] - s[1][0]) < 1e-12
        assert abs(s[1][0]) < 1.0

    def test_passive_ladder_reciprocal_and_lossless(self):
        net = lc_ladder()
        for f in (1e8, 1e9, 3e9, 5e9):
            s = s_parameters_at(net, f)
            assert abs(s[0][1] - s[1][0]) < 1e-12
            power = abs(s[0][0]) ** 2 + abs(s[1][0]) ** 2
            assert math.isclose(power, 1.0, rel_tol=0, abs_tol=1e-9)


class TestBuildNetwork:
    def test_plain_report_structure(self):
        net = build_network(proto_amp())
        assert net.node_count == 13
        assert len(net.elements) == 24
        gate_l = [e.henries for e in net.elements if isinstance(e, Inductor)][:5]
        expected = [1.25e-9, 2.5e-9, 2.5e-9, 2.5e-9, 1.25e-9]
        for got, want in zip(gate_l, expected):
            assert math.isclose(got, want, rel_tol=1e-12)
        terms = [e for e in net.elements if isinstance(e, Resistor)]
        assert len(terms) == 2
        assert all(r.ohms == 50.0 for r in terms)
        assert sum(isinstance(e, Vccs) for e in net.elements) == 4

    def test_lossy_series_report_structure(self, fr4):
        t = TransistorModel(name="L", gm=0.04, cgs=1.2e-12, cds=0.2e-12, ri=1.5, rds=220.0)
        rep = synthesize_design(
            t, fr4, DesignOptions(stages=3, series_cap=0.4e-12)
        )
        net = build_network(rep)
        # per stage: series cap, ri, cgs, rds, cds, vccs; chains 4+4; 2 terms
        assert sum(isinstance(e, Capacitor) for e in net.elements) == 3 * 3
        assert sum(isinstance(e, Resistor) for e in net.elements) == 2 + 2 * 3
        assert sum(isinstance(e, Vccs) for e in net.elements) == 3

    def test_tapered_drain_inductors(self, gan, fr4):
        rep = synthesize_design(
            gan, fr4, DesignOptions(stages=4, taper="ginzton", series_cap="match-drain")
        )
        net = build_network(rep)
        inductors = [e.henries for e in net.elements if isinstance(e, Inductor)]
        gate_chain, drain_chain = inductors[:5], inductors[5:]
        c_load = rep.transistor.cds
        section_l = [z * z * c_load for z in rep.taper_drain_profile.sections]
        expected = [
            section_l[0] / 2.0,
            (section_l[0] + section_l[1]) / 2.0,
            (section_l[1] + section_l[2]) / 2.0,
            (section_l[2] + section_l[3]) / 2.0,
            section_l[3] / 2.0,
        ]
        for got, want in zip(drain_chain, expected):
            assert math.isclose(got, want, rel_tol=1e-12)
        # gate chain uses the first n of the n+1 tapered sections
        gate_l = [z * z * rep.effective_cgs for z in rep.taper_gate_profile.sections[:4]]
        assert math.isclose(gate_chain[0], gate_l[0] / 2.0, rel_tol=1e-12)
        assert math.isclose(gate_chain[1], (gate_l[0] + gate_l[1]) / 2.0, rel_tol=1e-12)

    def test_device_override(self):
        rep = proto_amp()
        hot = TransistorModel(name="HOT", gm=0.1, cgs=1e-12, cds=1e-12)
        s_base = s_parameters_at(build_network(rep), 10e6)
        s_hot = s_parameters_at(build_network(rep, hot), 10e6)
        assert math.isclose(abs(s_hot[1][0]) / abs(s_base[1][0]), 2.0, rel_tol=1e-4)


class TestAmplifierResponse:
    def test_low_frequency_gain(self):
        net = build_network(proto_amp())
        s = s_parameters_at(net, 10e6)
        assert math.isclose(abs(s[1][0]), 5.0000123363967175, rel_tol=1e-12)
        # n*gm*z0/2 with everything matched
        assert math.isclose(abs(s[1][0]), 5.0, rel_tol=1e-4)

    def test_gain_scales_with_stage_count(self, fr4):
        t = TransistorModel(name="PROTO", gm=0.05, cgs=1e-12, cds=1e-12)
        mags = {}
        for n in range(1, 7):
            rep = synthesize_design(t, fr4, DesignOptions(stages=n))
            s = s_parameters_at(build_network(rep), 10e6)
            mags[n] = abs(s[1][0])
        base = mags[1]
        for n, mag in mags.items():
            assert math.isclose(mag, n * base, rel_tol=5e-3)

    def test_cutoff_near_line_cutoff(self):
        rep = proto_amp()
        net = build_network(rep)
        metrics = extract_metrics(sweep(net, 10e6, 15e9, 401))
        assert math.isclose(metrics.low_freq_gain_db, 13.979421517210023, rel_tol=1e-12)
        assert metrics.cutoff_hz is not None
        assert math.isclose(metrics.cutoff_hz, 6379776991.434338, rel_tol=1e-12)
        assert math.isclose(metrics.cutoff_hz, rep.predicted_fc, rel_tol=0.15)


class TestSweep:
    def test_validation(self):
        net = pi_pad()
        with pytest.raises(SimulationError):
            sweep(net, 0.0, 1e9, 11)
        with pytest.raises(SimulationError):
            sweep(net, 2e9, 1e9, 11)
        with pytest.raises(SimulationError):
            sweep(net, 1e8, 1e9, 1)
        with pytest.raises(SimulationError):
            sweep(net, 1e8, 1e9, 11, spacing="decade")

    def test_linear_grid(self):
        swp = sweep(pi_pad(), 1e8, 1e9, 10)
        assert swp.frequencies[0] == 1e8
        assert swp.frequencies[-1] == 1e9
        diffs = [b - a for a, b in zip(swp.frequencies, swp.frequencies[1:])]
        assert max(diffs) - min(diffs) < 1e-3

    def test_log_grid(self):
        swp = sweep(pi_pad(), 1e6, 1e9, 4, spacing="log")
        assert swp.frequencies[0] == 1e6
        assert swp.frequencies[-1] == 1e9
        ratios = [b / a for a, b in zip(swp.frequencies, swp.frequencies[1:])]
        for r in ratios:
            assert math.isclose(r, 10.0, rel_tol=1e-9)

    def test_deterministic(self):
        net = build_network(proto_amp())
        assert sweep(net, 10e6, 10e9, 21) == sweep(net, 10e6, 10e9, 21)


def synthetic_sweep(freqs, s21_mags, s11_mags):
    mats = tuple(
        ((complex(s11), 0j), (complex(s21), 0j))
        for s21, s11 in zip(s21_mags, s11_mags)
    )
    return TwoPortSweep(frequencies=tuple(freqs), s_matrices=mats, reference_impedance=50.0)


class TestMetrics:
    def test_interpolated_cutoff(self):
        swp = synthetic_sweep([1.0, 2.0, 3.0, 4.0], [1.0, 1.0, 0.5, 0.25], [0.1, 0.2, 0.05, 0.9])
        m = extract_metrics(swp)
        assert m.low_freq_gain_db == 0.0
        expected = 2.0 + 3.0 / (20.0 * math.log10(2.0))
        assert math.isclose(m.cutoff_hz, expected, rel_tol=1e-12)
        assert math.isclose(m.worst_s11_db, 20.0 * math.log10(0.2), rel_tol=1e-12)

    def test_exact_sample_cutoff(self):
        mag = 10.0 ** (-3.0 / 20.0)
        swp = synthetic_sweep([1.0, 2.0], [1.0, mag], [0.1, 0.1])
        m = extract_metrics(swp)
        assert m.cutoff_hz == 2.0

    def test_no_cutoff_in_sweep(self):
        swp = synthetic_sweep([1.0, 2.0, 3.0], [1.0, 1.0, 1.01], [0.1, 0.3, 0.2])
        m = extract_metrics(swp)
        assert m.cutoff_hz is None
        assert math.isclose(m.worst_s11_db, 20.0 * math.log10(0.3), rel_tol=1e-12)

    def test_zero_s11_reports_neg_inf(self):
        swp = synthetic_sweep([1.0, 2.0, 3.0], [1.0, 1.0, 1.0], [0.0, 0.0, 0.0])
        m = extract_metrics(swp)
        assert m.worst_s11_db == -math.inf
