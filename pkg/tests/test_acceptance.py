"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import random
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

from cosetlab import cosets as cs
from cosetlab import groups as gr
from cosetlab.cli import main
from cosetlab.contracting import HNNZp, SymK, flabby_demo, index_growth
from cosetlab.convergence import OrthonormalFamily, firm_demo, rajchman_demo, transfer_search
from cosetlab.ell2 import SparseVector, average_over_keys, inner
from cosetlab.experiments import EXPERIMENTS
from cosetlab.folner import (
    Box, HeisBox, LampBSGrid, QuotientRect, SymBall, adversarial_translate, affq_rect, left_defect,
)
from cosetlab.gns import (
    BochnerTorus, ConstOne, DeltaAtH, ball_window, build_gram, gns_inner, gns_quotient, psd_check,
)
from cosetlab.splitting import coboundary_inequality_check, verify_splitting
from cosetlab.splitting import testbed_instances as build_testbed
from cosetlab.thinness import SubgroupCharacter, correlation_bound_check, induced_firmness_curve

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def verdict(num: int, ok: bool, detail: str):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


def test_criterion_01_flabby_sym():
    t0 = time.perf_counter()
    recs = flabby_demo(SymK((0,)), SymBall(), 6)
    dt = time.perf_counter() - t0
    ok = all(r.norm_sq == 1 for r in recs) and recs[-1].size == 5040 and dt < 10
    verdict(1, ok, f"Sym_0: norm^2 = {sorted({str(r.norm_sq) for r in recs})} for n=1..6, "
                   f"|F_6| = {recs[-1].size}, {dt:.2f}s")


def test_criterion_02_flabby_hnn():
    t0 = time.perf_counter()
    recs = flabby_demo(HNNZp(2), LampBSGrid(2), 6)
    growth = [index_growth(HNNZp(2), k) for k in range(7)]
    dt = time.perf_counter() - t0
    ok = (all(r.norm_sq == 1 and r.conjugator == gr.LampBS(0, r.n, 2) for r in recs)
          and growth == [2 ** k for k in range(7)] and dt < 10)
    verdict(2, ok, f"HNN p=2: conjugators {[gr.encode(r.conjugator) for r in recs]}, norm^2 = 1, "
                   f"index growth {growth}, {dt:.2f}s")


def brute_multiplicity_norm(F, H):
    """Quadratic count of pairs in the same coset, via membership only."""
    F = list(F)
    hits = sum(1 for s in F for t in F if H.contains(s.inverse() * t))
    return Fraction(hits, len(F) ** 2)


def test_criterion_03_firm_heis():
    rng = random.Random(11)
    e = gr.Heis(0, 0, 0)
    translates = [gr.random_like(e, rng, 50) for _ in range(100)]
    H = cs.HeisCenter()
    pts = firm_demo(HeisBox(), H, translates, 12)
    exact = all(p.constant and p.max_value == Fraction(1, (2 * p.n + 1) ** 2) for p in pts)
    cross = True
    for n in (1, 2, 3):
        F = HeisBox().generate(n)
        for s in translates[:5 if n < 3 else 2]:
            cross &= brute_multiplicity_norm(F.right_translate(s), H) == Fraction(1, (2 * n + 1) ** 2)
    verdict(3, exact and cross, f"Heis/center: 1/(2n+1)^2 for all 100 translates at n=1..12 "
                                f"(zero variance {exact}); brute-force match at n<=3 {cross}")


def test_criterion_04_right_set():
    H = cs.HeisCenter()
    v = SparseVector.delta(H.key(gr.Heis(0, 0, 0)), H)
    norms = [average_over_keys(QuotientRect(H).generate(n), v).norm_sq() for n in range(1, 11)]
    box_ok = norms == [Fraction(1, (2 * n + 1) ** 2) for n in range(1, 11)]
    rng = random.Random(7)
    ineq_ok, nontrivial = True, 0
    for m in (4, 6, 8, 12):
        divisors = [d for d in range(1, m + 1) if m % d == 0]
        for _ in range(20):
            l = rng.choice([d for d in divisors if d < m])
            h = rng.choice([d for d in divisors if d % l == 0])
            L = [l * i for i in range(m // l)]
            F = rng.sample(L, rng.randint(1, max(1, len(L) - 1)))
            s0 = rng.choice(L)
            lhs, rhs, dfct = coboundary_inequality_check(m, h, l, F, s0, rng)
            ineq_ok &= lhs <= rhs
            nontrivial += dfct > 0
    verdict(4, box_ok and ineq_ok and nontrivial > 0,
            f"quotient boxes norm^2 = 1/(2n+1)^2 for n<=10 {box_ok}; coboundary inequality on Z/4,6,8,12 "
            f"x 20 trials {ineq_ok} ({nontrivial} with nonzero defect)")


def test_criterion_05_adversarial():
    t = gr.Heis(1, 0, 0)
    ok, ratios = True, []
    for n in range(1, 9):
        F = HeisBox().generate(n)
        res = adversarial_translate(F, t)
        ratios.append(str(res.ratio))
        ok &= res.found and res.ratio == 2 and left_defect(F, t) <= Fraction(2, n)
    verdict(5, ok, f"Heis t=(1,0,0): right ratios {ratios} with left defect <= 2/n for n=1..8")


def test_criterion_06_splitting():
    t0 = time.perf_counter()
    inst = build_testbed()
    reports = [verify_splitting(rep, H, L, name) for name, rep, H, L in inst]
    dt = time.perf_counter() - t0
    ok = (len(inst) >= 20 and all(len(rep.elements) <= 120 for _, rep, _, _ in inst)
          and all(r.pass_ and r.crossterm == 0 for r in reports) and dt < 30)
    verdict(6, ok, f"{sum(r.pass_ for r in reports)}/{len(reports)} instances split exactly, {dt:.2f}s")


def random_thin_instance(rng, kind):
    if kind == "lampbs":
        e, L = gr.LampBS(0, 0, 2), cs.LampBSBase(2)
    else:
        e, L = gr.IntVec((0, 0)), rng.choice([cs.ZdSlice(2, 1), cs.ZdSlice(2, 2)])
    F = list(dict.fromkeys(gr.random_like(e, rng, 4) for _ in range(rng.randint(1, 60))))
    phi = SubgroupCharacter(L, (((Fraction(rng.randint(0, 3), 4),), Fraction(1)),))
    return F, phi, gr.random_like(e, rng, 3), L


def test_criterion_07_thinness():
    rng = random.Random(2024)
    checks = [correlation_bound_check(*random_thin_instance(rng, kind))
              for kind in ["lampbs"] * 25 + ["zd"] * 25]
    corr_ok = all(c.holds and c.certified and isinstance(c.C_sq, Fraction) for c in checks)
    nmax = 64
    e2 = gr.IntVec((0, 0))
    z2 = induced_firmness_curve(Box(2), cs.ZdSlice(2, 2), [e2, gr.IntVec((3, -5))], nmax)
    z2_ok = all(p.bound == Fraction(1, p.n) and p.certified and p.worst <= p.bound for p in z2)
    ea = gr.AffQ(Fraction(0), Fraction(1))
    gen = affq_rect()
    aq = induced_firmness_curve(gen, cs.AffScale(), [ea, gr.AffQ(Fraction(1, 2), Fraction(3))], nmax)
    stated = [max(Fraction(1, len(gen.agen(p.n))), Fraction(1, len(gen.bgen(p.n)))) for p in aq]
    aq_ok = all(p.bound == b and p.certified and p.worst <= p.bound for p, b in zip(aq, stated))
    mono = all(a.bound > b.bound for c in (z2, aq) for a, b in zip(c, c[1:]))
    verdict(7, corr_ok and z2_ok and aq_ok and mono,
            f"correlation bound on 50 instances {corr_ok}; Z^2 bounds 1/n {z2_ok}; AffQ bounds "
            f"max(1/|A|,1/|B|) {aq_ok}; strictly decreasing to n={nmax} {mono}")


def test_criterion_08_gns():
    Hc = cs.HeisCenter()
    heis_gens = [gr.Heis(1, 0, 0), gr.Heis(0, 1, 0)]
    keys = ball_window([gr.Heis(0, 0, 0)], heis_gens, 2, Hc)
    G = build_gram(DeltaAtH(Hc), keys, Hc)
    ident = all(G.matrix[i][j] == int(i == j) for i in range(len(keys)) for j in range(len(keys)))
    rank_one = gns_quotient(build_gram(ConstOne(), keys, Hc)).rank == 1

    catalog = [
        (DeltaAtH(Hc), Hc, gr.Heis(0, 0, 0), heis_gens),
        (DeltaAtH(cs.ZdSlice(2, 2)), cs.ZdSlice(2, 2), gr.IntVec((0, 0)), [gr.IntVec((1, 0)), gr.IntVec((0, 1))]),
        (DeltaAtH(cs.LampBSBase(2)), cs.LampBSBase(2), gr.LampBS(0, 0, 2),
         [gr.LampBS(1, 0, 2), gr.LampBS(0, 1, 2)]),
        (DeltaAtH(cs.SymFix((0,))), cs.SymFix((0,)), gr.FinPerm(()),
         [gr.FinPerm.from_cycles((0, 1)), gr.FinPerm.from_cycles((1, 2))]),
        (DeltaAtH(cs.AffScale()), cs.AffScale(), gr.AffQ(Fraction(0), Fraction(1)),
         [gr.AffQ(Fraction(1), Fraction(1)), gr.AffQ(Fraction(0), Fraction(2))]),
        (ConstOne(), Hc, gr.Heis(0, 0, 0), heis_gens),
        (BochnerTorus(((Fraction(1, 4), Fraction(1, 2)), (Fraction(3, 4), Fraction(1, 2))), (-1, 3)),
         cs.LampBSActing(3), gr.LampBS(0, 0, 3), [gr.LampBS(1, 0, 3), gr.LampBS(0, 1, 3)]),
        (BochnerTorus((((Fraction(1, 8),), Fraction(1, 2)), ((Fraction(7, 8),), Fraction(1, 2))), (-1,)),
         cs.Trivial(identity=gr.IntVec((0,))), gr.IntVec((0,)), [gr.IntVec((1,))]),
    ]
    modes, psd_ok = Counter(), True
    for phi, H, e, gens in catalog:
        v = psd_check(build_gram(phi, ball_window([e], gens, 2, H), H))
        modes[v.mode] += 1
        psd_ok &= v.psd and (v.mode == "exact" or v.min_eig >= -1e-9)

    rng = random.Random(8)
    elems = list(HeisBox().generate(1))
    phi = DeltaAtH(Hc)
    worst = Fraction(0)
    for _ in range(100):
        c = {x: Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for x in rng.sample(elems, 4)}
        d = {x: Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for x in rng.sample(elems, 4)}
        vc, vd = SparseVector(Hc), SparseVector(Hc)
        for x, a in c.items():
            vc = vc + SparseVector.delta(Hc.key(x), Hc) * a
        for x, a in d.items():
            vd = vd + SparseVector.delta(Hc.key(x), Hc) * a
        worst = max(worst, abs(gns_inner(phi, c, d) - inner(vc, vd)))
    verdict(8, ident and rank_one and psd_ok and worst == 0,
            f"delta Gram = I {ident}; const-one rank 1 {rank_one}; {len(catalog)} catalog windows PSD "
            f"{psd_ok} ({dict(modes)}); GNS vs l^2 max deviation {worst} over 100 pairs")


def test_criterion_09_transfer():
    def phi(x):
        return 1 if x.coords[0] % 2 == 0 else 0

    ok, worst_margin = True, None
    for m in range(1, 65):
        K = [gr.IntVec((k,)) for k in range(m)]
        r = transfer_search(phi, Box(1, "half", 2), K, m, 16)
        margin = (r.achieved - (Fraction(1, 2) - Fraction(1, m))) if r.status == "found" else None
        ok &= margin is not None and margin >= 0 and r.interchange_ok
        if margin is not None:
            worst_margin = margin if worst_margin is None else min(worst_margin, margin)
    verdict(9, ok, f"parity on Z: t_m with average >= 1/2 - 1/m for m=1..64 (least margin {worst_margin})")


RAJCHMAN_SEED = 2


def test_criterion_10_rajchman():
    fam = OrthonormalFamily.random(4096, 512, seed=RAJCHMAN_SEED)
    rep = rajchman_demo(fam, 512)
    last4 = rep.square_sup[-4:]
    decreasing = all(a > b for a, b in zip(last4, last4[1:]))
    sup512 = rep.sup_at(512)
    ok = sup512 <= 0.35 and decreasing and rep.bridge_ok and rep.combinatorial_ok
    verdict(10, ok, f"seed {RAJCHMAN_SEED}: sup at n=512 {sup512:.4f}; last squares "
                    f"{rep.squares[-4:]} -> {[round(x, 4) for x in last4]}; bridging {rep.bridge_ok}, "
                    f"combinatorial {rep.combinatorial_ok}")


def test_criterion_11_determinism(tmp_path, capsys):
    same = {}
    for name in EXPERIMENTS:
        cfg = str(CONFIGS / f"{name}.json")
        outs = []
        for run in ("a", "b"):
            out = tmp_path / f"{name}-{run}"
            code = main(["run", "--config", cfg, "--out", str(out)])
            assert code == 0
            outs.append(next(out.iterdir()).read_bytes())
        same[name] = outs[0] == outs[1]
    capsys.readouterr()  # drop the output paths printed by the CLI
    with capsys.disabled():
        verdict(11, all(same.values()), f"byte-identical reruns for {sum(same.values())}/{len(same)} experiments")
