"""Named experiments: config parsing, execution, and row emission."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, fields
from fractions import Fraction

from . import __version__
from . import cosets as cs
from . import groups as gr
from .errors import BudgetError, CosetLabError, ConfigurationError, ParseError, PreconditionError
from .scalars import GaussRat, fmt_scalar, to_scalar

EXPERIMENTS = (
    "defect", "adversarial-folner", "weak-et", "rset-demo", "firm-demo", "flabby-sym", "flabby-hnn",
    "thinness", "gns-window", "splitting", "transfer", "rajchman", "rigid-check",
)

TAGS = {
    "defect": "Følner defect |F symdiff tF|/|F| (left) or |F symdiff Ft|/|F| (right)",
    "adversarial-folner": "left Følner sets whose right translates are not Følner (conjugation into disjointness)",
    "weak-et": "weak ergodic theorem: pairings <w, A_F v> and the quantitative translate bound",
    "rset-demo": "right strong ergodic theorem: quotient boxes and the coboundary averaging inequality",
    "firm-demo": "firm strong sequences in groups without ICC quotients",
    "flabby-sym": "mean ergodic theorem fails with norm 1 for the finitary symmetric group (contracting triple)",
    "flabby-hnn": "mean ergodic theorem fails with norm 1 for Z[1/p] x| Z (contracting triple)",
    "thinness": "thin subgroups and ergodic averages of induced representations",
    "gns-window": "GNS construction on finite Gram windows",
    "splitting": "orthogonal splitting of H-invariants into L-invariants and coboundaries",
    "transfer": "transfer of Følner averages to a single translate",
    "rajchman": "Rajchman lemma for Cesàro averages of orthonormal sequences",
    "rigid-check": "rigid pairs: orbit constancy of bi-invariant positive-definite functions",
}


class AssertionFailure(CosetLabError):
    """An invariant that must hold failed; reported in the output header with exit code 4."""


@dataclass
class ExperimentConfig:
    experiment: str
    generator: dict = field(default_factory=dict)
    subgroup: dict = field(default_factory=dict)
    n_min: int = 1
    n_max: int = 6
    seed: int = 0
    budget: int = 2_000_000
    format: str = "csv"
    scalar_mode: str = "exact"
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        if not isinstance(d, dict):
            raise ConfigurationError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigurationError(f"field {unknown[0]!r}: unknown field")
        if "experiment" not in d:
            raise ConfigurationError("field 'experiment': missing")
        cfg = cls(**d)
        cfg.validate()
        return cfg

    def validate(self):
        def need(cond, name, msg):
            if not cond:
                raise ConfigurationError(f"field {name!r}: {msg}")

        need(self.experiment in EXPERIMENTS, "experiment", f"must be one of {', '.join(EXPERIMENTS)}")
        for name in ("n_min", "n_max", "seed", "budget"):
            v = getattr(self, name)
            need(isinstance(v, int) and not isinstance(v, bool), name, "must be an integer")
        need(self.n_min >= 1, "n_min", "must be at least 1")
        need(self.n_max >= self.n_min, "n_max", "must be at least n_min")
        need(0 <= self.seed < 2 ** 64, "seed", "must fit in 64 bits")
        need(self.budget >= 1, "budget", "must be positive")
        need(self.format in ("csv", "json"), "format", "must be csv or json")
        need(self.scalar_mode in ("exact", "float"), "scalar_mode", "must be exact or float")
        for name in ("generator", "subgroup", "params"):
            need(isinstance(getattr(self, name), dict), name, "must be an object")

    def resolved(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# --- selectors ---------------------------------------------------------------------

REQUIRED = object()


def _take(d: dict, where: str, allowed: dict) -> dict:
    """Validate a selector dict against allowed keys with defaults (REQUIRED = must be given)."""
    unknown = sorted(set(d) - set(allowed) - {"kind"})
    if unknown:
        raise ConfigurationError(f"field {where}.{unknown[0]!r}: unknown field")
    out = {}
    for k, default in allowed.items():
        if k in d:
            out[k] = d[k]
        elif default is REQUIRED:
            raise ConfigurationError(f"field {where}.{k!r}: missing")
        else:
            out[k] = default
    return out


def _element(text, where: str):
    try:
        return gr.parse_element(text)
    except (ParseError, ValueError, TypeError) as exc:
        raise ConfigurationError(f"field {where}: {exc}") from None


def build_generator(d: dict):
    from . import folner as fo

    kind = d.get("kind")
    if kind == "box":
        a = _take(d, "generator", {"d": 1, "shape": "half", "scale": 1})
        try:
            return fo.Box(a["d"], a["shape"], a["scale"])
        except ValueError as exc:
            raise ConfigurationError(f"field generator: {exc}") from None
    if kind == "heisbox":
        _take(d, "generator", {})
        return fo.HeisBox()
    if kind == "symball":
        _take(d, "generator", {})
        return fo.SymBall()
    if kind == "lampbs-grid":
        a = _take(d, "generator", {"p": 2})
        return fo.LampBSGrid(a["p"])
    if kind == "affq-rect":
        _take(d, "generator", {})
        return fo.affq_rect()
    raise ConfigurationError(f"field generator.kind: unknown generator {kind!r}")


def build_subgroup(d: dict) -> cs.Subgroup:
    kind = d.get("kind")
    try:
        if kind == "trivial":
            a = _take(d, "subgroup", {"identity": REQUIRED})
            return cs.Trivial(identity=_element(a["identity"], "subgroup.identity"))
        if kind == "full":
            a = _take(d, "subgroup", {"identity": REQUIRED})
            return cs.FullGroup(_element(a["identity"], "subgroup.identity"))
        if kind == "heis-center":
            _take(d, "subgroup", {})
            return cs.HeisCenter()
        if kind == "zd-slice":
            a = _take(d, "subgroup", {"d": 2, "j": 2})
            return cs.ZdSlice(a["d"], a["j"])
        if kind == "sym-fix":
            a = _take(d, "subgroup", {"K": [0]})
            return cs.SymFix(tuple(a["K"]))
        if kind == "lampbs-base":
            return cs.LampBSBase(_take(d, "subgroup", {"p": 2})["p"])
        if kind == "lampbs-normal":
            return cs.LampBSNormal(_take(d, "subgroup", {"p": 2})["p"])
        if kind == "lampbs-acting":
            return cs.LampBSActing(_take(d, "subgroup", {"p": 2})["p"])
        if kind == "aff-scale":
            _take(d, "subgroup", {})
            return cs.AffScale()
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"field subgroup: {exc}") from None
    raise ConfigurationError(f"field subgroup.kind: unknown subgroup {kind!r}")


def _params(cfg: ExperimentConfig, allowed: dict) -> dict:
    return _take(cfg.params, "params", allowed)


def _sample_element(gen) -> object:
    return next(iter(gen.generate(1)))


# --- experiments --------------------------------------------------------------------

def _sweep(cfg, body):
    """Run body(n) for each n, recording budget overflows as rows."""
    rows, blocked = [], 0
    for n in range(cfg.n_min, cfg.n_max + 1):
        try:
            rows.extend(body(n))
        except BudgetError as exc:
            blocked += 1
            rows.append({"n": n, "status": "budget-exceeded", "requested": exc.requested, "budget": exc.budget})
    return rows, blocked == cfg.n_max - cfg.n_min + 1


def run_defect(cfg):
    from .folner import left_defect, right_defect

    gen = build_generator(cfg.generator)
    p = _params(cfg, {"t": REQUIRED, "side": "left"})
    t = _element(p["t"], "params.t")
    if p["side"] not in ("left", "right"):
        raise ConfigurationError("field params.'side': must be left or right")
    fn = left_defect if p["side"] == "left" else right_defect

    def body(n):
        F = gen.generate(n, cfg.budget)
        return [{"n": n, "size": len(F), "defect": fn(F, t), "status": "ok"}]

    return _sweep(cfg, body)


def run_adversarial(cfg):
    from .folner import adversarial_translate, left_defect

    gen = build_generator(cfg.generator or {"kind": "heisbox"})
    p = _params(cfg, {"t": "heis:1,0,0", "search_budget": 1000})
    t = _element(p["t"], "params.t")

    def body(n):
        F = gen.generate(n, cfg.budget)
        res = adversarial_translate(F, t, p["search_budget"], cfg.seed)
        ld = left_defect(F, t)
        row = {"n": n, "size": len(F), "translate": gr.encode(res.s) if res.s is not None else "",
               "ratio": res.ratio if res.ratio is not None else "", "left_defect": ld,
               "tried": res.tried, "status": res.status}
        return [row]

    return _sweep(cfg, body)


def run_weak_et(cfg):
    from .ell2 import SparseVector, average, inner
    from .folner import left_defect

    gen = build_generator(cfg.generator or {"kind": "box", "d": 1})
    H = build_subgroup(cfg.subgroup or {"kind": "trivial", "identity": "zd:0"})
    p = _params(cfg, {"w": None, "t": REQUIRED})
    sample = _sample_element(gen)
    e = sample.identity()
    v = SparseVector.delta(H.key(e), H)
    w = SparseVector.delta(H.key(_element(p["w"], "params.w")), H) if p["w"] else v
    t = _element(p["t"], "params.t") if p["t"] else None

    def body(n):
        F = gen.generate(n, cfg.budget)
        Av = average(F, v)
        row = {"n": n, "size": len(F), "pairing": inner(w, Av)}
        if t is not None:
            tF = F.left_translate(t)
            diff = Av - average(tF, v)
            lhs = diff.norm_sq()
            rhs = left_defect(F, t) ** 2 * v.norm_sq()
            row.update({"translate_gap_sq": lhs, "bound_sq": rhs})
            if lhs > rhs:
                raise AssertionFailure(f"translate bound violated at n={n}: {lhs} > {rhs}")
        row["status"] = "ok"
        return [row]

    return _sweep(cfg, body)


def run_rset(cfg):
    from .ell2 import SparseVector, average_over_keys
    from .folner import QuotientRect
    from .splitting import coboundary_inequality_check

    H = build_subgroup(cfg.subgroup or {"kind": "heis-center"})
    p = _params(cfg, {"moduli": [4, 6, 8, 12], "trials": 20})
    try:
        gen = QuotientRect(H)
    except CosetLabError as exc:
        raise ConfigurationError(f"field subgroup: {exc}") from None
    e = gr.Heis(0, 0, 0) if isinstance(H, cs.HeisCenter) else gr.IntVec((0,) * H.d)
    v = SparseVector.delta(H.key(e), H)

    def body(n):
        keys = gen.generate(n, cfg.budget)
        norm = average_over_keys(keys, v).norm_sq()
        if norm != Fraction(1, len(keys)):
            raise AssertionFailure(f"quotient-box norm {norm} != 1/{len(keys)}")
        return [{"section": "quotient-box", "n": n, "size": len(keys), "norm_sq": norm, "status": "ok"}]

    rows, blocked = _sweep(cfg, body)
    rng = random.Random(cfg.seed)
    for m in p["moduli"]:
        divisors = [d for d in range(1, m + 1) if m % d == 0]
        for trial in range(p["trials"]):
            l = rng.choice(divisors)
            h = rng.choice([d for d in divisors if d % l == 0])
            order_L = m // l
            size = rng.randint(1, order_L)
            F = rng.sample([l * i for i in range(order_L)], size)
            s0 = l * rng.randrange(order_L)
            lhs, rhs, dfct = coboundary_inequality_check(m, h, l, F, s0, rng)
            if lhs > rhs:
                raise AssertionFailure(f"coboundary inequality violated on Z/{m}: {lhs} > {rhs}")
            rows.append({"section": "coboundary", "n": m, "trial": trial, "lhs_sq": lhs, "rhs_sq": rhs,
                         "defect": dfct, "status": "ok"})
    return rows, blocked


def _random_translates(sample, count, seed, scale):
    rng = random.Random(seed)
    return [gr.random_like(sample, rng, scale) for _ in range(count)]


def run_firm(cfg):
    from .convergence import firm_demo

    gen = build_generator(cfg.generator or {"kind": "heisbox"})
    H = build_subgroup(cfg.subgroup or {"kind": "heis-center"})
    p = _params(cfg, {"translates": 100, "scale": 50})
    trs = _random_translates(_sample_element(gen), p["translates"], cfg.seed, p["scale"])

    def body(n):
        (pt,) = firm_demo(gen, H, trs, n, nmin=n, budget=cfg.budget)
        return [{"n": n, "size": pt.size, "max": pt.max_value, "min": pt.min_value,
                 "constant": pt.constant, "status": "ok"}]

    return _sweep(cfg, body)


def run_flabby(cfg, triple, gen):
    from .contracting import HNNZp, flabby_demo, index_growth

    def body(n):
        (r,) = flabby_demo(triple, gen, n, nmin=n, budget=cfg.budget)
        if r.norm_sq != 1:
            raise AssertionFailure(f"norm^2 {r.norm_sq} != 1 at n={n}")
        row = {"n": n, "size": r.size, "conjugator": gr.encode(r.conjugator),
               "norm_sq": r.norm_sq, "weak_pairing": r.weak_pairing}
        if isinstance(triple, HNNZp):
            row["index"] = index_growth(triple, n)
        row["status"] = "ok"
        return [row]

    return _sweep(cfg, body)


def run_flabby_sym(cfg):
    from .contracting import SymK
    from .folner import SymBall

    p = _params(cfg, {"K": [0]})
    return run_flabby(cfg, SymK(tuple(p["K"])), SymBall())


def run_flabby_hnn(cfg):
    from .contracting import HNNZp
    from .folner import LampBSGrid

    p = _params(cfg, {"p": 2})
    return run_flabby(cfg, HNNZp(p["p"]), LampBSGrid(p["p"]))


def run_thinness(cfg):
    from .thinness import induced_firmness_curve

    gen = build_generator(cfg.generator or {"kind": "box", "d": 2})
    L = build_subgroup(cfg.subgroup or {"kind": "zd-slice", "d": 2, "j": 2})
    p = _params(cfg, {"translates": 5, "scale": 20})
    trs = _random_translates(_sample_element(gen), p["translates"], cfg.seed, p["scale"])

    def body(n):
        (pt,) = induced_firmness_curve(gen, L, trs, n, nmin=n, budget=cfg.budget)
        if pt.worst > pt.bound:
            raise AssertionFailure(f"correlation {pt.worst} exceeds thinness {pt.bound} at n={n}")
        return [{"n": n, "size": pt.size, "bound": pt.bound, "certified": pt.certified,
                 "worst_correlation": pt.worst, "status": "ok"}]

    return _sweep(cfg, body)


def build_phi(d: dict, H: cs.Subgroup):
    from .gns import BochnerTorus, ConstOne, DeltaAtH

    kind = d.get("kind", "delta")
    if kind == "delta":
        _take(d, "params.phi", {})
        return DeltaAtH(H)
    if kind == "one":
        _take(d, "params.phi", {})
        return ConstOne()
    if kind == "bochner":
        a = _take(d, "params.phi", {"points": REQUIRED, "dual_actions": []})
        try:
            pts = tuple((tuple(Fraction(t) for t in th), Fraction(w)) for th, w in a["points"])
            return BochnerTorus(pts, tuple(a["dual_actions"]), invariance=H)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(f"field params.phi.points: {exc}") from None
    raise ConfigurationError(f"field params.phi.kind: unknown function {kind!r}")


def run_gns(cfg):
    from .gns import ball_window, build_gram, compressed_rep, gns_quotient, psd_check

    H = build_subgroup(cfg.subgroup or {"kind": "heis-center"})
    p = _params(cfg, {"phi": {"kind": "delta"}, "generators": REQUIRED, "center": None, "act": None})
    phi = build_phi(p["phi"], H)
    gens = [_element(x, "params.generators") for x in p["generators"]]
    center = _element(p["center"], "params.center") if p["center"] else gens[0].identity()
    g = _element(p["act"], "params.act") if p["act"] else gens[0]
    float_mode = cfg.scalar_mode == "float"

    def body(n):
        window = ball_window([center], gens, n, H)
        if len(window) ** 2 > cfg.budget:
            raise BudgetError("window too large", requested=len(window) ** 2, budget=cfg.budget)
        try:
            gram = build_gram(phi, window, H, seed=cfg.seed)
        except PreconditionError as exc:
            raise AssertionFailure(f"radius {n}: {exc}") from None
        if float_mode:
            gram.matrix = [[complex(x) for x in r] for r in gram.matrix]
            gram.exact = False
        verdict = psd_check(gram)
        if not verdict.psd:
            raise AssertionFailure(f"Gram window not PSD at radius {n}: {verdict.witness}")
        basis = gns_quotient(gram)
        cr = compressed_rep(phi, gram, g, basis)
        wit = min(verdict.pivots) if verdict.pivots else (verdict.min_eig if verdict.min_eig is not None else "")
        return [{"n": n, "size": len(window), "mode": verdict.mode, "rank": basis.rank,
                 "min_pivot_or_eig": wit, "leakage": cr.leakage, "closed": cr.closed,
                 "unitary": cr.unitary, "op_norm": round(cr.op_norm, 12), "status": "ok"}]

    return _sweep(cfg, body)


def run_splitting(cfg):
    from .splitting import float_rep, testbed_instances, verify_splitting

    _params(cfg, {})
    rows = []
    for name, rep, H, L in testbed_instances():
        if cfg.scalar_mode == "float":
            rep = float_rep(rep, cfg.seed)
        r = verify_splitting(rep, H, L, name)
        rows.append({"instance": name, "order": len(rep.elements), "dim_H": r.dim_H, "dim_L": r.dim_L,
                     "dim_cobnd": r.dim_cobnd, "crossterm": r.crossterm, "pass": r.pass_, "status": "ok"})
        if not r.pass_:
            raise AssertionFailure(f"splitting failed on {name}: {r.counterexample}")
    return rows, False


def run_transfer(cfg):
    from .convergence import transfer_search
    from .folner import Box

    p = _params(cfg, {"m_max": 64, "scan_n": 16})

    def phi(x):
        return 1 if x.coords[0] % 2 == 0 else 0

    gen = Box(1, "half", 2)
    rows = []
    for m in range(1, p["m_max"] + 1):
        K = [gr.IntVec((k,)) for k in range(m)]
        r = transfer_search(phi, gen, K, m, p["scan_n"], cfg.budget)
        if r.status != "found" or r.achieved < r.beta_hat - Fraction(1, m) or not r.interchange_ok:
            raise AssertionFailure(f"transfer search failed at m={m}: {r.status}")
        rows.append({"m": m, "t": gr.encode(r.t), "achieved": r.achieved, "beta_hat": r.beta_hat,
                     "n": r.n, "target": r.beta_hat - Fraction(1, m), "status": r.status})
    return rows, False


def run_rajchman(cfg):
    from .convergence import OrthonormalFamily, rajchman_demo

    p = _params(cfg, {"m": 4096, "size": 512})
    if p["size"] > p["m"]:
        raise ConfigurationError("field params.'size': must not exceed params.m")
    fam = OrthonormalFamily.random(p["m"], p["size"], cfg.seed)
    rep = rajchman_demo(fam, p["size"])
    if not (rep.bridge_ok and rep.combinatorial_ok and rep.square_bound_ok):
        raise AssertionFailure("Rajchman bridging or square bound failed")
    rows = []
    for q, s in zip(rep.squares, rep.square_sup):
        rows.append({"n": q, "kind": "square", "sup": s, "l2": float(rep.l2_curve[q - 1]), "status": "ok"})
    last = p["size"]
    rows.append({"n": last, "kind": "final", "sup": rep.sup_at(last), "l2": float(rep.l2_curve[last - 1]),
                 "status": "ok"})
    return rows, False


def run_rigid(cfg):
    from .convergence import rigid_orbit_check

    H = cs.AffScale()
    p = _params(cfg, {"phi": {"kind": "delta"}})
    phi = build_phi(p["phi"], H)
    vals = [0, 1, 2, Fraction(1, 2), -3]
    scales = [1, 2, Fraction(1, 3), -1]
    window = [gr.AffQ(Fraction(b), Fraction(a)) for b in vals for a in scales]
    r = rigid_orbit_check(phi, window)
    if r.verdict == "counterexample":
        raise AssertionFailure(f"orbit constancy violated: {r.counterexample}")
    return [{"window": len(window), "verdict": r.verdict, "off_orbit_value": r.off_orbit_value, "status": "ok"}], False


RUNNERS = {
    "defect": run_defect, "adversarial-folner": run_adversarial, "weak-et": run_weak_et,
    "rset-demo": run_rset, "firm-demo": run_firm, "flabby-sym": run_flabby_sym,
    "flabby-hnn": run_flabby_hnn, "thinness": run_thinness, "gns-window": run_gns,
    "splitting": run_splitting, "transfer": run_transfer, "rajchman": run_rajchman,
    "rigid-check": run_rigid,
}


# --- output ---------------------------------------------------------------------------

def _cells(key, value) -> list[tuple[str, str]]:
    if isinstance(value, bool):
        return [(key, "true" if value else "false")]
    if isinstance(value, (Fraction, GaussRat)):
        v = to_scalar(value)
        if isinstance(v, Fraction):
            return [(key, fmt_scalar(v)), (key + "_float", repr(float(v)))]
        return [(key, fmt_scalar(v)), (key + "_float", repr(complex(v)))]
    if isinstance(value, float):
        return [(key, repr(value))]
    if isinstance(value, complex):
        return [(key, repr(value))]
    return [(key, str(value))]


def format_csv(header: dict, rows: list[dict]) -> str:
    lines = [f"# cosetlab {header['version']}",
             f"# experiment: {header['experiment']}",
             f"# theorem: {header['theorem']}",
             f"# status: {header['status']}",
             "# config: " + json.dumps(header["config"], sort_keys=True, separators=(",", ":"))]
    if "failure" in header:
        lines.append(f"# failure: {header['failure']}")
    flat = [dict(c for k, v in r.items() for c in _cells(k, v)) for r in rows]
    cols: list[str] = []
    for r in flat:
        for k in r:
            if k not in cols:
                cols.append(k)
    lines.append(",".join(cols))
    for r in flat:
        lines.append(",".join(_csv_escape(r.get(c, "")) for c in cols))
    return "\n".join(lines) + "\n"


def _csv_escape(s: str) -> str:
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def _json_cells(key, value) -> list[tuple[str, object]]:
    if isinstance(value, (bool, int, float)) or value is None:
        return [(key, value)]
    if isinstance(value, (Fraction, GaussRat)):
        v = to_scalar(value)
        if isinstance(v, Fraction):
            return [(key, fmt_scalar(v)), (key + "_float", float(v))]
        return [(key, fmt_scalar(v)), (key + "_float", [complex(v).real, complex(v).imag])]
    if isinstance(value, complex):
        return [(key, [value.real, value.imag])]
    return [(key, str(value))]


def format_json(header: dict, rows: list[dict]) -> str:
    flat = [dict(c for k, v in r.items() for c in _json_cells(k, v)) for r in rows]
    return json.dumps({"header": header, "rows": flat}, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class RunResult:
    exit_code: int
    text: str
    message: str = ""


def execute(cfg: ExperimentConfig) -> RunResult:
    """Run one experiment; exit code 0 ok, 3 all rows over budget, 4 assertion failure."""
    status, code, msg = "ok", 0, ""
    try:
        rows, all_blocked = RUNNERS[cfg.experiment](cfg)
        if all_blocked:
            status, code, msg = "budget-exceeded", 3, "every row exceeded the budget"
    except AssertionFailure as exc:
        rows, status, code, msg = [], "assertion-failed", 4, str(exc)
    header = {"version": __version__, "experiment": cfg.experiment, "theorem": TAGS[cfg.experiment],
              "status": status, "config": cfg.resolved()}
    if msg and code == 4:
        header["failure"] = msg
    text = format_csv(header, rows) if cfg.format == "csv" else format_json(header, rows)
    return RunResult(code, text, msg)


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return ExperimentConfig.from_dict(data)

