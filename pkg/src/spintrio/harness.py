"""Scenario runner: named presets reproducing the reference figures, a flat
key-value config format, CSV time-series output and a run manifest.

Default parameters are the reference operating point: omega0 = 1, omega1 =
0.3 (units of the drive frequency), exchange constants (-0.2, -0.1, -0.3),
per-qubit field multipliers (1, 2, 4), tau_max = 30.
"""

import time
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import __version__, measures, pauli
from .dynamics import (CouplingConstants, FieldSpec, IntegratorConfig,
                       integrate, oracle_deviation)
from .errors import ConfigError

ORACLE_TOL = 1e-8


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "run"
    initial: str = "GHZ"
    x: float = None
    field_kind: str = "R"
    omega0: float = 1.0
    omega1: float = 0.3
    j_ep: float = -0.2
    j_en: float = -0.1
    j_pn: float = -0.3
    multipliers: tuple = (1.0, 2.0, 4.0)
    tau_max: float = 30.0
    dt: float = 1e-3
    sample_every: int = 10
    measures: tuple = ("m_sm",)
    oracle_check: bool = False
    output_path: str = None

    def field_spec(self):
        return FieldSpec(kind=self.field_kind, omega0=self.omega0,
                         omega1=self.omega1, multipliers=self.multipliers)

    def couplings(self):
        return CouplingConstants(self.j_ep, self.j_en, self.j_pn)

    def integrator(self):
        return IntegratorConfig(tau_max=self.tau_max, dt=self.dt,
                                sample_every=self.sample_every)


def _validate(cfg):
    if cfg.initial not in pauli.STATE_NAMES:
        raise ConfigError(f"unknown initial state {cfg.initial!r}")
    if cfg.initial == "Mix":
        if cfg.x is None:
            raise ConfigError("Mix initial state requires x")
        if not 1 / 3 < cfg.x <= 1:
            raise ConfigError(f"x must be in (1/3, 1], got {cfg.x}")
    elif cfg.x is not None:
        raise ConfigError("x only applies to the Mix initial state")
    if cfg.field_kind not in ("R", "NR", "ConstantZ"):
        raise ConfigError(f"unknown field_kind {cfg.field_kind!r}")
    for ch in cfg.measures:
        if ch not in measures.CHANNELS:
            raise ConfigError(f"unknown measure channel {ch!r}")
    try:
        cfg.integrator()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


_BOOL_WORDS = {"on": True, "true": True, "yes": True, "1": True,
               "off": False, "false": False, "no": False, "0": False}


def _parse_value(key, raw, lineno):
    try:
        if key in ("initial", "field_kind", "name", "output_path"):
            return raw
        if key in ("omega0", "omega1", "j_ep", "j_en", "j_pn",
                   "tau_max", "dt", "x"):
            return float(raw)
        if key == "sample_every":
            return int(raw)
        if key == "multipliers":
            vals = tuple(float(v) for v in raw.replace(",", " ").split())
            if len(vals) != 3:
                raise ValueError("need 3 values")
            return vals
        if key == "measures":
            return tuple(v for v in raw.replace(",", " ").split())
        if key == "oracle_check":
            return _BOOL_WORDS[raw.strip().lower()]
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"line {lineno}: bad value for {key!r}: "
                          f"{raw!r} ({exc})") from None
    raise ConfigError(f"line {lineno}: unknown key {key!r}")


def parse_config(source):
    """Parse a flat `key = value` document into a validated ScenarioConfig."""
    known = {f.name for f in fields(ScenarioConfig)}
    kv = {}
    for lineno, line in enumerate(str(source).splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', "
                              f"got {stripped!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        kv[key] = _parse_value(key, raw, lineno)
    return _validate(ScenarioConfig(**kv))


@dataclass
class RunManifest:
    """Flat record written alongside every CSV."""
    entries: dict = field(default_factory=dict)

    def write(self, path):
        lines = [f"{k} = {v}" for k, v in self.entries.items()]
        Path(path).write_text("\n".join(lines) + "\n")


def _fmt(v):
    return f"{v:.11e}"


def write_csv(path, taus, channels):
    names = list(channels)
    cols = [channels[n] for n in names]
    lines = ["tau," + ",".join(names)]
    for i, tau in enumerate(taus):
        lines.append(",".join([_fmt(tau)] + [_fmt(c[i]) for c in cols]))
    Path(path).write_text("\n".join(lines) + "\n")


def _manifest_base(cfg):
    man = RunManifest()
    for f in fields(ScenarioConfig):
        v = getattr(cfg, f.name)
        if isinstance(v, tuple):
            v = ",".join(str(x) for x in v)
        man.entries[f.name] = v
    man.entries["code_version"] = __version__
    return man


def run_scenario(cfg, out_dir=None):
    """Integrate one scenario, evaluate its channels, write CSV + manifest.

    Returns (TimeSeries, RunManifest).  CSV goes to cfg.output_path, or to
    out_dir/<name>.csv when out_dir is given; no file is written otherwise.
    """
    _validate(cfg)
    start = time.perf_counter()
    rho0, r0 = pauli.initial_state(cfg.initial, cfg.x)
    spec = cfg.field_spec()
    coupling = cfg.couplings()
    ts = integrate(r0, spec, coupling, cfg.integrator())

    chans = measures.evaluate_channels(ts.states, cfg.measures)
    ts.channels.update(chans)

    man = _manifest_base(cfg)
    b = ts.channels["b"]
    man.entries["b_drift"] = f"{np.abs(b - b[0]).max():.3e}"
    if cfg.oracle_check:
        dev = oracle_deviation(ts, rho0, spec, coupling, dt=cfg.dt)
        man.entries["oracle_max_dev"] = f"{dev:.3e}"
        if dev > ORACLE_TOL:
            from .errors import AccuracyError
            raise AccuracyError(
                f"oracle deviation {dev:.3e} exceeds {ORACLE_TOL:.0e} "
                f"in scenario {cfg.name!r}", dev)
    man.entries["wall_time_s"] = f"{time.perf_counter() - start:.3f}"

    path = cfg.output_path
    if path is None and out_dir is not None:
        path = str(Path(out_dir) / f"{cfg.name}.csv")
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        csv_chans = {n: chans[n] for n in cfg.measures}
        csv_chans.setdefault("b", b)
        write_csv(path, ts.taus, csv_chans)
        man.write(str(path) + ".manifest.txt")
    return ts, man


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

_FIG1_STATES = [("S", None), ("BS", None), ("GHZ", None), ("W", None),
                ("Mix", 2 / 3)]
_FIG2_PAIRS = [("S", "m_l"), ("BS", "c3"), ("GHZ", "m_k"), ("W", "m_b")]

PRESETS = {
    "figure1": "triple-cumulant measure m_sm for S/BS/GHZ/W/Mix(2/3), "
               "R and NR fields (10 runs)",
    "figure2": "m_l(S), c3(BS), m_k(GHZ), m_b(W), R and NR fields (8 runs)",
    "figure3": "spin-flip probability of qubit n, coupled vs free "
               "(fluctuator beats), R field",
    "rabi-check": "single decoupled qubit e in the resonant field "
                  "(analytic sin^2 check)",
    "fixed-point": "constant longitudinal field, polarized product state "
                   "(stationary density matrix)",
}


def list_presets():
    """Preset names with one-line descriptions."""
    return dict(PRESETS)


def preset_configs(name):
    """The list of ScenarioConfigs a preset comprises."""
    if name == "figure1":
        return [ScenarioConfig(name=f"figure1_{st}_{fk}", initial=st, x=x,
                               field_kind=fk, measures=("m_sm",))
                for st, x in _FIG1_STATES for fk in ("R", "NR")]
    if name == "figure2":
        return [ScenarioConfig(name=f"figure2_{st}_{fk}", initial=st,
                               field_kind=fk, measures=(ch,))
                for st, ch in _FIG2_PAIRS for fk in ("R", "NR")]
    if name == "figure3":
        return [
            ScenarioConfig(name="figure3_coupled", initial="Up",
                           field_kind="R", measures=("p_flip",)),
            ScenarioConfig(name="figure3_free", initial="Up", field_kind="R",
                           j_en=0.0, j_pn=0.0, measures=("p_flip",)),
        ]
    if name == "rabi-check":
        return [ScenarioConfig(name="rabi_check", initial="Up",
                               field_kind="R", multipliers=(1.0, 0.0, 0.0),
                               j_ep=0.0, j_en=0.0, j_pn=0.0,
                               measures=("p_flip_e",))]
    if name == "fixed-point":
        return [ScenarioConfig(name="fixed_point", initial="Up",
                               field_kind="ConstantZ",
                               measures=("rho11", "rho88"))]
    raise ConfigError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")


def run_preset(name, out_dir, oracle=None, dt=None, tau_max=None):
    """Run every scenario of a preset; returns the list of CSV paths written.

    figure3 merges its two runs into one CSV with channels p_flip_coupled
    and p_flip_free.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfgs = preset_configs(name)
    overrides = {}
    if oracle is not None:
        overrides["oracle_check"] = oracle
    if dt is not None:
        overrides["dt"] = dt
    if tau_max is not None:
        overrides["tau_max"] = tau_max
    cfgs = [replace(c, **overrides) for c in cfgs]

    if name == "figure3":
        results = [run_scenario(c) for c in cfgs]
        (ts_c, man_c), (ts_f, man_f) = results
        path = out_dir / "figure3.csv"
        write_csv(path, ts_c.taus,
                  {"p_flip_coupled": ts_c.channels["p_flip"],
                   "p_flip_free": ts_f.channels["p_flip"]})
        man = _manifest_base(cfgs[0])
        man.entries["name"] = "figure3"
        man.entries["b_drift"] = man_c.entries["b_drift"]
        man.entries["b_drift_free"] = man_f.entries["b_drift"]
        for src, tag in ((man_c, "oracle_max_dev"),
                         (man_f, "oracle_max_dev_free")):
            if "oracle_max_dev" in src.entries:
                man.entries[tag] = src.entries["oracle_max_dev"]
        man.entries["wall_time_s"] = man_c.entries["wall_time_s"]
        man.write(str(path) + ".manifest.txt")
        return [path]

    paths = []
    for c in cfgs:
        run_scenario(c, out_dir=out_dir)
        paths.append(out_dir / f"{c.name}.csv")
    return paths
