"""The ten acceptance criteria, one test each.

Each test records a PASS/FAIL line that is printed in the terminal summary
(and immediately, under `pytest -s`).
"""
import json
import time
from collections import Counter, defaultdict
from fractions import Fraction
from pathlib import Path

from scrollacm.chern import ch_line, ch_shift, euler_pairing
from scrollacm.errors import NotIrregular, ZeroRank
from scrollacm.fuzz import conjugated, random_blocks, random_pencil, rng, seed_from_env
from scrollacm.kronrep import fibonacci, psi, rigid_dimension_test
from scrollacm.mutation import (
    CollectionState,
    act_word,
    base_vector,
    enumerate_rigid,
    h_bundle,
    kfrak_member,
    mutate_collection,
    rigid_bundle,
    ulrich_exceptional,
)
from scrollacm.pencil import KWBlock, classify_quartic_ulrich, kw_decompose, quartic_acm_catalog, verify_equivalence
from scrollacm.surface import F, H, ZERO, DivisorClass, L_class, Scroll, canonical_class, cohomology, riemann_roch
from scrollacm.surface import classify_acm_line_bundles

from conftest import ACCEPTANCE, scrolls_by_degree

FIXTURES = Path(__file__).parent / "fixtures"


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_01_base_vector():
    bad = []
    scrolls = scrolls_by_degree(3, 12)
    for s in scrolls:
        s1, s2, s3 = ch_shift(ch_line(s, L_class(s))), ch_line(s, -1 * F), ch_line(s, ZERO)
        pairings = (euler_pairing(s, s2, s3), euler_pairing(s, s1, s3), euler_pairing(s, s1, s2))
        if tuple(base_vector(s)) != (2, s.dX - 4, s.dX - 2) or pairings != tuple(base_vector(s)):
            bad.append(s.name)
    record(1, not bad, f"base vector on {len(scrolls)} scrolls with 3 <= d_X <= 12; mismatches: {bad or 'none'}")


def test_criterion_02_slopes():
    fixture = json.loads((FIXTURES / "slope_fixture.json").read_text())
    s = Scroll.from_ab(2, 3)
    target_f = Fraction(fixture["paper_slope_F"])
    target_h = Fraction(fixture["paper_slope_H"])
    slopes = {}
    for word in [(-3, 2, -1), (-3, 2, -2)]:
        d = rigid_bundle(s, word)
        rec = fixture["words"][f"({','.join(map(str, word))})"]
        # the fixture pins the computed values independently of the paper's number
        assert (d.rank, d.c1, d.slope) == (rec["rank"], DivisorClass(rec["c1"]["H"], rec["c1"]["F"]),
                                           Fraction(rec["slope"]))
        slopes[word] = d.slope
    h = h_bundle(s, (3, -2, 2))
    f_ok = any(v == target_f for v in slopes.values())
    h_ok = h.slope == target_h
    detail = (f"F slopes {{(-3,2,-1): {slopes[(-3, 2, -1)]}, (-3,2,-2): {slopes[(-3, 2, -2)]}}} vs {target_f}; "
              f"H_(3,-2,2) slope {h.slope} vs {target_h}")
    record(2, f_ok and h_ok, detail)


def test_criterion_03_fibonacci_exponents():
    s = Scroll.from_ab(2, 3)
    expected = {0: (0, 1), 1: (1, 0), 2: (3, 1), 3: (8, 3), -1: (1, 3), -2: (3, 8), -3: (8, 21)}
    got = {k: (ulrich_exceptional(s, k).a, ulrich_exceptional(s, k).b) for k in expected}
    bad = {k: got[k] for k in expected if got[k] != expected[k]}
    record(3, not bad, f"{len(expected)} exponent pairs (a,b) for U_-3..U_3 on S(2,3); mismatches: {bad or 'none'}")


def test_criterion_04_kfrak():
    s = Scroll.from_ab(2, 3)
    failures = []
    checked = 0
    for k1 in range(-10, 11):
        checked += 1
        if not kfrak_member(s, (k1,))[0]:
            failures.append((k1,))
        for k2 in range(-10, 11):
            if k2 == 0:
                continue
            checked += 1
            if kfrak_member(s, (k1, k2))[0] != (k1 <= 0):
                failures.append((k1, k2))
    for word in [(-3, 1), (-3, 2), (-3, 2, -2)]:
        checked += 1
        if not kfrak_member(s, word)[0]:
            failures.append(word)
    record(4, not failures, f"{checked} membership checks on S(2,3); failures: {failures or 'none'}")


def test_criterion_05_kw_round_trip():
    start = time.perf_counter()
    n_cases = 500
    recovered = verified = 0
    first_bad = None
    for i in range(n_cases):
        r = rng(i)
        blocks = random_blocks(r, companion=True)
        if not any(b.kind == "J" and b.point is None for b in blocks):
            blocks.append(KWBlock.J(None, r.randint(1, 3)))
        m = conjugated(blocks, r)
        dec = kw_decompose(m)
        same = Counter(dec.blocks) == Counter(blocks)
        ok = verify_equivalence(dec, m)
        recovered += same
        verified += ok
        if (not same or not ok) and first_bad is None:
            first_bad = (i, [str(b) for b in blocks], [str(b) for b in dec.blocks])
    elapsed = time.perf_counter() - start
    record(5, recovered == verified == n_cases,
           f"{recovered}/{n_cases} multisets recovered, {verified}/{n_cases} witnessed "
           f"(seed {seed_from_env()}, every case has an infinite block and a quadratic companion, {elapsed:.1f}s)"
           + (f"; first failure {first_bad}" if first_bad else ""))


def test_criterion_06_quartic_tameness():
    s = Scroll.from_ab(2, 2)
    n_cases = 200
    bad = []
    by_dims = defaultdict(set)
    summands = 0
    for i in range(n_cases):
        r = rng(10_000 + i)
        m = random_pencil(r, r.randint(0, 5), r.randint(0, 5))
        for d in classify_quartic_ulrich(s, m):
            summands += 1
            if abs(d.a - d.b) > 1:
                bad.append((i, d.name, "|a-b| > 1"))
            elif d.a == d.b and d.point is None:
                bad.append((i, d.name, "a = b without a point"))
            elif d.a != d.b:
                by_dims[(d.b, d.a)].add((d.rank, d.c1, d.ch2_times2, d.name))
    for dims, descs in by_dims.items():
        if len(descs) != 1:
            bad.append((dims, "not unique", sorted(map(str, descs))))
    record(6, not bad, f"{n_cases} random pencils on S(2,2), {summands} summands, "
                       f"{len(by_dims)} rigid dimension vectors; violations: {bad[:3] or 'none'}")


def test_criterion_07_schur_roots():
    bad = []
    for w in range(2, 11):
        for k in range(0, 13):
            if psi(w, fibonacci(w, k), fibonacci(w, k + 1)) != 0:
                bad.append(("psi", w, k))
        # brute-force table of consecutive pairs against the descent
        table = {}
        k = 0
        while fibonacci(w, k) <= 200:
            table.setdefault(frozenset((fibonacci(w, k), fibonacci(w, k + 1))), k)
            k += 1
        for a in range(0, 60):
            for b in range(0, 60):
                if a or b:
                    expect = table.get(frozenset((a, b))) if a != b else None
                    if rigid_dimension_test(w, a, b) != expect:
                        bad.append(("descent", w, a, b))
    record(7, not bad, f"psi on the Fibonacci line for 2 <= w <= 10, 0 <= k <= 12, and descent vs table "
                       f"on [0,60)^2; failures: {bad[:5] or 'none'}")


def test_criterion_08_cohomology():
    bad = []
    checked = 0
    for a, b in [(2, 2), (1, 3), (2, 3), (3, 3)]:
        s = Scroll.from_ab(a, b)
        K = canonical_class(s)
        for alpha in range(-8, 9):
            for beta in range(-8, 9):
                d = DivisorClass(alpha, beta)
                h = cohomology(s, d)
                checked += 1
                if h[0] - h[1] + h[2] != riemann_roch(s, d):
                    bad.append((s.name, str(d), "chi"))
                if h != cohomology(s, K - d)[::-1]:
                    bad.append((s.name, str(d), "serre"))
    record(8, not bad, f"{checked} classes on S(2,2), S(1,3), S(2,3), S(3,3); failures: {bad[:5] or 'none'}")


def _walk(s, max_len, max_abs_k):
    """Replay the enumeration tree, checking the tracked vector after every step."""
    stats = {"words": 0, "steps": 0, "skipped": 0, "bad": []}

    def go(state, depth):
        if depth == max_len:
            return
        gen = 1 if depth % 2 == 0 else 2
        for kt in range(-max_abs_k, max_abs_k + 1):
            if kt == 0 and depth > 0:
                continue
            word = state.word + (kt,)
            if not kfrak_member(s, word)[0]:
                continue
            try:
                if kt == 0:
                    nxt = CollectionState(s, state.chars, (0,), state.vector)
                else:
                    nxt = mutate_collection(state, kt, gen)
            except (NotIrregular, ZeroRank):
                stats["skipped"] += 1
                continue
            stats["words"] += 1
            stats["steps"] += 1
            if nxt.vector != nxt.recomputed_vector() or nxt.vector != act_word(word, base_vector(s)):
                stats["bad"].append((word, "vector"))
            if euler_pairing(s, nxt.middle, nxt.middle) != 1:
                stats["bad"].append((word, "chi(E,E)"))
            go(nxt, depth + 1)

    go(CollectionState.initial(s), 0)
    return stats


def test_criterion_09_mutation_consistency():
    details = []
    bad = []
    for s in (Scroll.from_ab(2, 3), Scroll.from_ab(3, 3)):
        stats = _walk(s, 3, 3)
        res = enumerate_rigid(s, 3, 3)
        if stats["words"] + stats["skipped"] != res.visited:
            bad.append((s.name, "word count", stats["words"] + stats["skipped"], res.visited))
        for d in res.descriptors:
            if euler_pairing(s, d.ch, d.ch) != 1:
                bad.append((s.name, d.name, "chi(E,E)"))
        bad += [(s.name,) + b for b in stats["bad"]]
        details.append(f"{s.name}: {stats['words']} words, {len(res.descriptors)} descriptors, "
                       f"{stats['skipped']} non-irregular words skipped")
    record(9, not bad, "; ".join(details) + f"; failures: {bad[:5] or 'none'}")


def test_criterion_10_s13_catalog():
    s = Scroll.from_ab(1, 3)
    cat = quartic_acm_catalog(s)
    lines = {d.c1 for d in cat if d.tag == "line-bundle"}
    expected_lines = {d for d, _ in classify_acm_line_bundles(s)}
    sporadic = {d.name: d for d in cat if d.tag.startswith("sporadic")}
    checks = {
        "line bundles": lines == expected_lines and len(lines) == 5,
        "sporadic set": set(sporadic) == {"V", "V(-F)", "W"},
        "V": sporadic.get("V") is not None and (sporadic["V"].rank, sporadic["V"].c1) == (2, 3 * F - H),
        "V(-F)": sporadic.get("V(-F)") is not None and (sporadic["V(-F)"].rank, sporadic["V(-F)"].c1) == (2, F - H),
        "W": sporadic.get("W") is not None and (sporadic["W"].rank, sporadic["W"].c1) == (2, 2 * F),
        "h1(L^*) = 1": cohomology(s, -1 * L_class(s))[1] == 1,
        "h1(2H-4F) = 1": cohomology(s, 2 * H - 4 * F)[1] == 1,
        "certificates": all(d.extension["ext1"] == 1 for d in sporadic.values()),
    }
    failed = [k for k, v in checks.items() if not v]
    record(10, not failed, f"{len(cat)} catalog entries on S(1,3); failed checks: {failed or 'none'}")
