"""Small-signal two-port simulation by nodal analysis.

Networks are R/L/C elements plus voltage-controlled current sources on an
integer node set with ground fixed at node 0. At each frequency the nodal
admittance matrix is assembled and the 2x2 port admittance extracted with
two dense solves: unit voltage applied at one port with the other shorted,
then the port currents read back. S-parameters follow from

    S = D^-1 (I - Z*Yp) (I + Z*Yp)^-1 D,   D = diag(sqrt(z1), sqrt(z2))

with real reference impedances. Line terminations are ordinary resistors
inside the network; only the two port nodes are excited.

Solves are dense complex LU with partial pivoting (numpy.linalg.solve),
which is deterministic: the same network and frequency always produce the
same bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .design import DesignReport
from .device import TransistorModel
from .errors import DesignError, SimulationError

LINEAR = "linear"
LOG = "log"


@dataclass(frozen=True)
class Resistor:
    a: int
    b: int
    ohms: float


@dataclass(frozen=True)
class Capacitor:
    a: int
    b: int
    farads: float


@dataclass(frozen=True)
class Inductor:
    a: int
    b: int
    henries: float


@dataclass(frozen=True)
class Vccs:
    """Current gm*(V(ctrl_p) - V(ctrl_m)) flowing from out_p to out_m."""

    out_p: int
    out_m: int
    ctrl_p: int
    ctrl_m: int
    gm: float


@dataclass(frozen=True)
class Port:
    node: int
    z0: float = 50.0


@dataclass(frozen=True)
class Network:
    """Two-port element network with ground at node 0."""

    node_count: int
    elements: tuple
    port1: Port
    port2: Port

    def __post_init__(self) -> None:
        if self.node_count < 2:
            raise DesignError("network needs at least ground and one more node")
        for port in (self.port1, self.port2):
            if not 0 < port.node < self.node_count:
                raise DesignError(f"port node {port.node} out of range (and not ground)")
            if port.z0 <= 0:
                raise DesignError("port reference impedance must be positive")
        if self.port1.node == self.port2.node:
            raise DesignError("ports must sit on distinct nodes")
        for e in self.elements:
            self._check_element(e)
        self._check_port_grounding()

    def _check_element(self, e) -> None:
        if isinstance(e, (Resistor, Capacitor, Inductor)):
            nodes = (e.a, e.b)
            value = e.ohms if isinstance(e, Resistor) else (
                e.farads if isinstance(e, Capacitor) else e.henries
            )
            if value <= 0:
                raise DesignError(f"element value must be positive: {e}")
            if e.a == e.b:
                raise DesignError(f"element shorts a node to itself: {e}")
        elif isinstance(e, Vccs):
            nodes = (e.out_p, e.out_m, e.ctrl_p, e.ctrl_m)
        else:
            raise DesignError(f"unknown element type: {e!r}")
        for n in nodes:
            if not 0 <= n < self.node_count:
                raise DesignError(f"node {n} out of range in {e}")

    def _check_port_grounding(self) -> None:
        # DC-wise floating ports make the port admittance meaningless, so
        # require a passive path to ground before any solve is attempted
        adj: dict[int, set[int]] = {}
        for e in self.elements:
            if isinstance(e, (Resistor, Capacitor, Inductor)):
                adj.setdefault(e.a, set()).add(e.b)
                adj.setdefault(e.b, set()).add(e.a)
        reached = {0}
        frontier = [0]
        while frontier:
            node = frontier.pop()
            for nxt in adj.get(node, ()):
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        for port in (self.port1, self.port2):
            if port.node not in reached:
                raise DesignError(
                    f"port node {port.node} has no passive path to ground"
                )


@dataclass(frozen=True)
class TwoPortSweep:
    """Frequencies with the S-matrix ((s11, s12), (s21, s22)) at each."""

    frequencies: tuple[float, ...]
    s_matrices: tuple[tuple[tuple[complex, complex], tuple[complex, complex]], ...]
    reference_impedance: float


@dataclass(frozen=True)
class SweepMetrics:
    low_freq_gain_db: float
    cutoff_hz: float | None
    worst_s11_db: float


def build_network(report: DesignReport, t: TransistorModel | None = None) -> Network:
    """Amplifier network from a design report.

    Both lines are chains of T-sections with adjacent half-inductors
    merged; the far gate end and the near drain end are terminated in the
    system impedance, leaving the gate input as port 1 and the drain
    output as port 2. Each stage hangs its input branch (optional series
    capacitor, then ri, then cgs to ground) off its gate node and its
    output (rds if finite, cds, and the controlled source) off its drain
    node. Tapered reports size each stage's inductance from its profile
    section.
    """
    if t is None:
        t = report.transistor
    n = report.stages
    z0 = report.system_impedance
    l_gate = _cell_inductances(report, gate=True)
    l_drain = _cell_inductances(report, gate=False)

    counter = [1]

    def new_node() -> int:
        k = counter[0]
        counter[0] += 1
        return k

    elements: list = []
    p1 = new_node()
    gate_nodes = [new_node() for _ in range(n)]
    gate_term = new_node()
    drain_term = new_node()
    drain_nodes = [new_node() for _ in range(n)]
    p2 = new_node()

    _chain(elements, [p1] + gate_nodes + [gate_term], l_gate)
    elements.append(Resistor(gate_term, 0, z0))
    _chain(elements, [drain_term] + drain_nodes + [p2], l_drain)
    elements.append(Resistor(drain_term, 0, z0))

    for g_node, d_node in zip(gate_nodes, drain_nodes):
        node = g_node
        if report.series_capacitor is not None:
            nxt = new_node()
            elements.append(Capacitor(node, nxt, report.series_capacitor))
            node = nxt
        if t.ri > 0:
            nxt = new_node()
            elements.append(Resistor(node, nxt, t.ri))
            node = nxt
        elements.append(Capacitor(node, 0, t.cgs))
        ctrl = node
        if math.isfinite(t.rds):
            elements.append(Resistor(d_node, 0, t.rds))
        elements.append(Capacitor(d_node, 0, t.cds))
        elements.append(Vccs(d_node, 0, ctrl, 0, t.gm))

    return Network(
        node_count=counter[0],
        elements=tuple(elements),
        port1=Port(p1, z0),
        port2=Port(p2, z0),
    )


def s_parameters_at(net: Network, f: float):
    """S-matrix of the network at a single frequency, as a nested tuple."""
    if f <= 0:
        raise SimulationError(f"frequency must be positive, got {f}")
    w = 2.0 * math.pi * f
    size = net.node_count - 1
    y = np.zeros((size, size), dtype=complex)

    def stamp_two_terminal(a: int, b: int, adm: complex) -> None:
        if a:
            y[a - 1, a - 1] += adm
        if b:
            y[b - 1, b - 1] += adm
        if a and b:
            y[a - 1, b - 1] -= adm
            y[b - 1, a - 1] -= adm

    for e in net.elements:
        if isinstance(e, Resistor):
            stamp_two_terminal(e.a, e.b, 1.0 / e.ohms)
        elif isinstance(e, Capacitor):
            stamp_two_terminal(e.a, e.b, 1j * w * e.farads)
        elif isinstance(e, Inductor):
            stamp_two_terminal(e.a, e.b, 1.0 / (1j * w * e.henries))
        else:
            for out, sign_out in ((e.out_p, 1.0), (e.out_m, -1.0)):
                if not out:
                    continue
                for ctrl, sign_ctrl in ((e.ctrl_p, 1.0), (e.ctrl_m, -1.0)):
                    if not ctrl:
                        continue
                    y[out - 1, ctrl - 1] += sign_out * sign_ctrl * e.gm

    ports = [net.port1.node - 1, net.port2.node - 1]
    internal = [k for k in range(size) if k not in ports]
    y_pp = y[np.ix_(ports, ports)]
    y_port = np.array(y_pp)
    if internal:
        y_pi = y[np.ix_(ports, internal)]
        y_ip = y[np.ix_(internal, ports)]
        y_ii = y[np.ix_(internal, internal)]
        try:
            v_int = np.linalg.solve(y_ii, -y_ip)
        except np.linalg.LinAlgError as exc:
            raise SimulationError(f"singular nodal system at {f} Hz: {exc}") from exc
        y_port = y_pp + y_pi @ v_int

    d = np.diag([math.sqrt(net.port1.z0), math.sqrt(net.port2.z0)])
    d_inv = np.diag([1.0 / math.sqrt(net.port1.z0), 1.0 / math.sqrt(net.port2.z0)])
    z = np.diag([net.port1.z0, net.port2.z0])
    ident = np.eye(2)
    try:
        inv = np.linalg.inv(ident + z @ y_port)
    except np.linalg.LinAlgError as exc:
        raise SimulationError(f"singular port system at {f} Hz: {exc}") from exc
    s = d_inv @ (ident - z @ y_port) @ inv @ d
    return ((complex(s[0, 0]), complex(s[0, 1])), (complex(s[1, 0]), complex(s[1, 1])))


def sweep(
    net: Network,
    f_start: float,
    f_stop: float,
    points: int,
    spacing: str = LINEAR,
) -> TwoPortSweep:
    """Evaluate the network over a frequency grid, in grid order."""
    if f_start <= 0 or f_stop <= f_start:
        raise SimulationError("need 0 < f_start < f_stop")
    if points < 2:
        raise SimulationError(f"need at least 2 points, got {points}")
    if spacing == LINEAR:
        step = (f_stop - f_start) / (points - 1)
        freqs = [f_start + k * step for k in range(points)]
    elif spacing == LOG:
        lstep = (math.log(f_stop) - math.log(f_start)) / (points - 1)
        freqs = [math.exp(math.log(f_start) + k * lstep) for k in range(points)]
    else:
        raise SimulationError(f"spacing must be {LINEAR!r} or {LOG!r}, got {spacing!r}")
    freqs[0] = f_start
    freqs[-1] = f_stop
    matrices = tuple(s_parameters_at(net, f) for f in freqs)
    return TwoPortSweep(
        frequencies=tuple(freqs),
        s_matrices=matrices,
        reference_impedance=net.port1.z0,
    )


def extract_metrics(swp: TwoPortSweep) -> SweepMetrics:
    """Low-frequency gain, -3 dB cutoff, and worst in-band input match.

    The cutoff is taken relative to the gain at the first sweep point and
    located by linear interpolation in dB between samples. When the gain
    never drops 3 dB inside the sweep, cutoff_hz is None and the input
    match is reported over the whole sweep instead.
    """
    s21_db = [_db(abs(m[1][0])) for m in swp.s_matrices]
    s11_db = [_db(abs(m[0][0])) for m in swp.s_matrices]
    ref = s21_db[0]
    threshold = ref - 3.0
    cutoff = None
    for i in range(1, len(s21_db)):
        if s21_db[i] <= threshold:
            if s21_db[i] == threshold:
                cutoff = swp.frequencies[i]
            else:
                f_lo, f_hi = swp.frequencies[i - 1], swp.frequencies[i]
                db_lo, db_hi = s21_db[i - 1], s21_db[i]
                cutoff = f_lo + (db_lo - threshold) * (f_hi - f_lo) / (db_lo - db_hi)
            break
    if cutoff is None:
        worst = max(s11_db)
    else:
        worst = max(
            db for f, db in zip(swp.frequencies, s11_db) if f <= cutoff
        )
    return SweepMetrics(low_freq_gain_db=ref, cutoff_hz=cutoff, worst_s11_db=worst)


def _db(magnitude: float) -> float:
    if magnitude == 0.0:
        return -math.inf
    return 20.0 * math.log10(magnitude)


def _chain(elements: list, nodes: list[int], cell_l: list[float]) -> None:
    """Series inductors down a line: half cells at the ends, merged middles."""
    count = len(nodes) - 1
    for i in range(count):
        if i == 0:
            value = cell_l[0] / 2.0
        elif i == count - 1:
            value = cell_l[-1] / 2.0
        else:
            value = (cell_l[i - 1] + cell_l[i]) / 2.0
        elements.append(Inductor(nodes[i], nodes[i + 1], value))


def _cell_inductances(report: DesignReport, gate: bool) -> list[float]:
    n = report.stages
    if report.taper is None:
        cell = report.gate_cell if gate else report.drain_cell
        return [cell.inductance] * n
    profile = report.taper_gate_profile if gate else report.taper_drain_profile
    if profile is None:
        raise DesignError("tapered report is missing its profiles")
    sections = profile.sections
    expected = (n, n + 1) if gate else (n,)
    if len(sections) not in expected:
        raise DesignError(
            f"{'gate' if gate else 'drain'} profile has {len(sections)} sections "
            f"for {n} stages"
        )
    c_load = report.effective_cgs if gate else report.transistor.cds
    return [z * z * c_load for z in sections[:n]]
