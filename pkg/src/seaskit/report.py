"""Evaluation driver and text/CSV/JSON rendering of design summaries."""

import csv
import io
import json
import textwrap
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from seaskit import alias_core, classic, seas
from seaskit.design_io import (
    DesignVector,
    decode_design_vector,
    encode_design_matrix,
    parse_design_vector_text,
)
from seaskit.errors import ComparisonError, ValidationError
from seaskit.seas import format_fixed, fraction_text

SCHEMA_VERSION = 1
PATTERN_PLACES = 4
GWLP_PLACES = 3
ES2_PLACES = 3
GR_PLACES = 2
DEFAULT_WIDTH = 96

BUILTIN_DESIGNS = {
    "D_1": "d1.vec",
    "D_2": "d2.vec",
    "D_3": "d3.vec",
    "D_SIB": "d_sib.vec",
}


def builtin_key(name):
    """Normalise ``d1``, ``D_1``, ``dsib`` ... to the keys of BUILTIN_DESIGNS."""
    return "D_" + name.upper().removeprefix("D").lstrip("_")


def builtin_design(name):
    """Shipped 14-run, 23-factor example designs by name (``D_1`` ... ``D_SIB``)."""
    key = builtin_key(name)
    if key not in BUILTIN_DESIGNS:
        raise ValidationError(f"unknown builtin design {name!r}; have {sorted(BUILTIN_DESIGNS)}")
    text = resources.files("seaskit.data").joinpath(BUILTIN_DESIGNS[key]).read_text()
    return parse_design_vector_text(text)


@dataclass(frozen=True)
class DesignReport:
    name: str
    n_runs: int
    n_factors: int
    k_max: int
    engine: str
    patterns: seas.SeasPatterns
    classic: classic.ClassicSummary
    design_vector: DesignVector = None
    effects: tuple = None
    strict_text: bool = False


def evaluate(x, name="design", k_max=None, engine="auto", effects=False,
             strict_text=False, spectrum=None):
    """Compute every summary of design ``x`` and bundle it in a :class:`DesignReport`."""
    if spectrum is None:
        spectrum = alias_core.compute_spectrum(x, k_max=k_max, engine=engine)
    agg = alias_core.aggregate(spectrum)
    eff = None
    if effects:
        eff = tuple(seas.all_effect_patterns(alias_core.aggregate_per_column(spectrum), strict_text))
    used = engine if engine != "auto" else alias_core.choose_engine(x.n_factors, k_max)
    return DesignReport(
        name=name,
        n_runs=x.n_runs,
        n_factors=x.n_factors,
        k_max=spectrum.k_max,
        engine=used,
        patterns=seas.design_patterns(agg),
        classic=classic.classic_summary(agg),
        design_vector=encode_design_matrix(x) if x.n_runs <= 64 else None,
        effects=eff,
        strict_text=strict_text,
    )


# --- text ----------------------------------------------------------------------


def _wrap(label, items, width, open_="(", close=")"):
    body = open_ + ", ".join(items) + close
    pad = " " * (len(label) + 2)
    return textwrap.fill(
        body, width=width, initial_indent=f"{label}: ", subsequent_indent=pad,
        break_on_hyphens=False,
    )


def _fmt_all(values, places):
    return [format_fixed(v, places) for v in values]


def _gr_text(gr):
    text = format_fixed(gr.value, GR_PLACES)
    return text + " (orthogonal through order m)" if gr.orthogonal else text


def render_text(r, width=DEFAULT_WIDTH):
    lines = [f"Summary of the aliasing structure for design {r.name}"]
    lines.append(f"n={r.n_runs} runs, m={r.n_factors} factors, k_max={r.k_max}, engine={r.engine}")
    head = []
    if r.classic.es2 is not None:
        head.append(f"E(s^2)={format_fixed(r.classic.es2, ES2_PLACES)}")
    head.append(f"GR={_gr_text(r.classic.gr)}")
    lines.append("; ".join(head))
    if r.design_vector is not None:
        lines.append(_wrap("Design vector", [str(c) for c in r.design_vector.codes], width))
    for which in seas.PATTERN_NAMES:
        lines.append(_wrap(f"{which}-pattern", _fmt_all(r.patterns.pattern(which), PATTERN_PLACES), width))
    lines.append(_wrap("GWLP", _fmt_all(r.classic.gwlp, GWLP_PLACES), width))
    text = "\n".join(lines) + "\n"
    if r.effects:
        text += "\n" + render_effects_text(r, width=width)
    return text


def render_effects_text(r, which="all", width=DEFAULT_WIDTH):
    names = seas.PATTERN_NAMES if which == "all" else (which.upper(),)
    out = []
    for w in names:
        out.append(f"Effect-SEAS {w}-pattern ({'strict' if r.strict_text else 'table'} definition)")
        for e in r.effects:
            out.append(_wrap(f"{e.column + 1:>4}", _fmt_all(e.pattern(w), PATTERN_PLACES), width, "", ""))
        rank = seas.rank_columns(r.effects, w)
        out.append(_wrap(f"Ranking ({w})", [str(c) for c in rank.one_based()], width, "", ""))
        for group in rank.ties:
            out.append("  tied: " + ", ".join(str(c + 1) for c in group))
        out.append("")
    return "\n".join(out)


# --- csv -----------------------------------------------------------------------

CSV_FIELDS = ("quantity", "column", "k", "value_exact", "value_display")


def render_csv(r):
    """One row per scalar; ``column`` is 1-based for Effect-SEAS rows, empty otherwise."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    if r.classic.es2 is not None:
        w.writerow(("es2", "", 2, fraction_text(r.classic.es2), format_fixed(r.classic.es2, ES2_PLACES)))
    gr = r.classic.gr
    w.writerow(("gr", "", gr.r if gr.r is not None else "", fraction_text(gr.value), format_fixed(gr.value, GR_PLACES)))
    for k, v in enumerate(r.classic.gwlp, start=1):
        w.writerow(("gwlp", "", k, fraction_text(v), format_fixed(v, GWLP_PLACES)))
    for which in seas.PATTERN_NAMES:
        for k, v in zip(r.patterns.ks, r.patterns.pattern(which)):
            w.writerow((which, "", k, fraction_text(v), format_fixed(v, PATTERN_PLACES)))
    for k, row in enumerate(r.classic.cfv, start=1):
        for j, count in enumerate(row, start=1):
            w.writerow(("cfv", "", k, f"J={r.n_runs + 1 - j}:{count}", str(count)))
    for e in r.effects or ():
        for which in seas.PATTERN_NAMES:
            for k, v in zip(e.ks, e.pattern(which)):
                w.writerow((f"effect_{which}", e.column + 1, k, fraction_text(v), format_fixed(v, PATTERN_PLACES)))
    return buf.getvalue()


# --- json ----------------------------------------------------------------------


def report_to_dict(r):
    c = r.classic
    doc = {
        "schema_version": SCHEMA_VERSION,
        "design": {
            "name": r.name,
            "n_runs": r.n_runs,
            "n_factors": r.n_factors,
            "design_vector": list(r.design_vector.codes) if r.design_vector else None,
        },
        "k_max": r.k_max,
        "engine": r.engine,
        "es2": format_fixed(c.es2, ES2_PLACES) if c.es2 is not None else None,
        "gr": format_fixed(c.gr.value, GR_PLACES),
        "gr_order": c.gr.r,
        "gwlp": _fmt_all(c.gwlp, GWLP_PLACES),
        "cfv": [list(row) for row in c.cfv],
        "exact": {
            "es2": fraction_text(c.es2) if c.es2 is not None else None,
            "gr": fraction_text(c.gr.value),
            "gwlp": [fraction_text(v) for v in c.gwlp],
        },
        "patterns": {
            w: seas.pattern_to_json(r.patterns.pattern(w), r.patterns.start_k, PATTERN_PLACES)
            for w in seas.PATTERN_NAMES
        },
    }
    if r.effects:
        doc["effects"] = {
            "strict_text": r.strict_text,
            "columns": [
                {"column": e.column + 1,
                 **{w: seas.pattern_to_json(e.pattern(w), e.start_k, PATTERN_PLACES) for w in seas.PATTERN_NAMES}}
                for e in r.effects
            ],
            "rankings": {w: seas.rank_columns(r.effects, w).one_based() for w in seas.PATTERN_NAMES},
        }
    return doc


def render_json(r):
    return json.dumps(report_to_dict(r), indent=2) + "\n"


def _pattern_from_json(entries):
    return tuple(Fraction(e["value_exact"]) for e in entries)


def report_from_json(text):
    """Rebuild a :class:`DesignReport` from :func:`render_json` output."""
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {doc.get('schema_version')!r}")
    ex = doc["exact"]
    pats = doc["patterns"]
    start = pats["M"][0]["k"] if pats["M"] else 1
    patterns = seas.SeasPatterns(*(_pattern_from_json(pats[w]) for w in seas.PATTERN_NAMES), start_k=start)
    summary = classic.ClassicSummary(
        Fraction(ex["es2"]) if ex["es2"] is not None else None,
        classic.Resolution(Fraction(ex["gr"]), doc["gr_order"]),
        tuple(Fraction(v) for v in ex["gwlp"]),
        tuple(tuple(row) for row in doc["cfv"]),
    )
    effects = None
    strict = False
    if "effects" in doc:
        strict = doc["effects"]["strict_text"]
        effects = tuple(
            seas.EffectSeasPatterns(
                *(_pattern_from_json(col[w]) for w in seas.PATTERN_NAMES),
                column=col["column"] - 1,
                start_k=col["M"][0]["k"] if col["M"] else 2,
            )
            for col in doc["effects"]["columns"]
        )
    d = doc["design"]
    vec = DesignVector(d["n_runs"], tuple(d["design_vector"])) if d["design_vector"] else None
    return DesignReport(d["name"], d["n_runs"], d["n_factors"], doc["k_max"], doc["engine"],
                        patterns, summary, vec, effects, strict)


def render_design_report(r, fmt="text", width=DEFAULT_WIDTH):
    if fmt == "text":
        return render_text(r, width)
    if fmt == "csv":
        return render_csv(r)
    if fmt == "json":
        return render_json(r)
    raise ValidationError(f"unknown format {fmt!r}")


# --- comparison ------------------------------------------------------------------


def _verdicts(reports, patterns):
    out = []
    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            a, b = reports[i], reports[j]
            for w in patterns:
                pa, pb = a.patterns.pattern(w), b.patterns.pattern(w)
                size = min(len(pa), len(pb))
                cmp = seas.compare_patterns(pa[:size], pb[:size], a.patterns.start_k)
                out.append((a.name, b.name, w, cmp))
    return out


def _verdict_text(a, b, w, cmp):
    if cmp.relation == "equal":
        return f"{a} vs {b}: {w}-pattern equal"
    winner, loser = (a, b) if cmp.relation == "better" else (b, a)
    return f"{a} vs {b}: {w}-pattern favours {winner} over {loser} (first difference at k={cmp.first_differing_k})"


def render_comparison(reports, patterns=("M", "A", "P"), truncate_k=4, fmt="text"):
    """Side-by-side summary table plus pairwise lexicographic verdicts."""
    if len(reports) < 2:
        raise ComparisonError("need at least two designs to compare")
    shapes = {(r.n_runs, r.n_factors) for r in reports}
    if len(shapes) != 1:
        raise ComparisonError(f"designs differ in (runs, factors): {sorted(shapes)}")
    patterns = tuple(p.upper() for p in patterns)
    kmax = min(r.k_max for r in reports)
    ks = list(range(2, min(truncate_k, kmax) + 1))
    header = ["Design", "E(s^2)", "GR"] + [f"A_{k}" for k in ks]
    for w in patterns:
        header += [f"e{w}_{k}" for k in ks]
    rows = []
    for r in reports:
        c = r.classic
        row = [r.name, format_fixed(c.es2, ES2_PLACES) if c.es2 is not None else "",
               format_fixed(c.gr.value, GR_PLACES)]
        row += [format_fixed(c.gwlp[k - 1], GWLP_PLACES) for k in ks]
        for w in patterns:
            row += [format_fixed(r.patterns.entry(w, k), PATTERN_PLACES) for k in ks]
        rows.append(row)
    verdicts = _verdicts(reports, patterns)

    if fmt == "json":
        return json.dumps({
            "schema_version": SCHEMA_VERSION,
            "columns": header,
            "rows": rows,
            "verdicts": [
                {"a": a, "b": b, "pattern": w, "relation": c.relation, "first_differing_k": c.first_differing_k}
                for a, b, w, c in verdicts
            ],
        }, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(header)
        wr.writerows(rows)
        wr.writerow([])
        wr.writerow(["a", "b", "pattern", "relation", "first_differing_k"])
        for a, b, w, c in verdicts:
            wr.writerow([a, b, w, c.relation, c.first_differing_k or ""])
        return buf.getvalue()
    if fmt != "text":
        raise ValidationError(f"unknown format {fmt!r}")
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(x).rjust(wd) if i else str(x).ljust(wd) for i, (x, wd) in enumerate(zip(row, widths)))
             for row in [header, *rows]]
    lines.append("")
    lines += [_verdict_text(*v) for v in verdicts]
    return "\n".join(lines) + "\n"


def load_builtin(name, **kwargs):
    """Decode and evaluate a shipped design."""
    v = builtin_design(name)
    return evaluate(decode_design_vector(v), name=builtin_key(name), **kwargs)
