"""Build report sections from analysis results."""

from __future__ import annotations

import json
from collections import defaultdict
from pathlib import Path

from .complexity import complexity_stats, letter_complexity, runs_test_uniform
from .distinctivity import DistanceMatrix, mean_distinctivities
from .distributions import (
    POISSON,
    SS_GEOMETRIC,
    DiscreteModelFit,
    evaluate_fit,
    fit_discrete,
    make_params,
)
from .formats import DatasetBundle
from .model import Alphabet, FrequencyTable, Letter, MappingTable, representation_histogram
from .report import Num, Report, Section, Table
from .uncertainty import UncertaintyStats, comparison_table, mean_uncertainty


def _weight_expr(weights: list[int]) -> str:
    if not weights:
        return "-"
    counts: dict[int, int] = {}
    for w in weights:
        counts[w] = counts.get(w, 0) + 1
    return "+".join(str(w) if n == 1 else f"{n}x{w}" for w, n in counts.items())


def component_expr(letter: Letter) -> str:
    return _weight_expr([c.kind.weight for c in letter.components])


def connection_expr(letter: Letter) -> str:
    return _weight_expr([c.weight for c in letter.connections])


def complexity_sections(alphabet: Alphabet) -> list[Section]:
    stats = complexity_stats(alphabet)
    letters = Table(["glyph", "components", "connections", "complexity"])
    for letter in alphabet:
        letters.rows.append([letter.glyph, component_expr(letter), connection_expr(letter), letter_complexity(letter)])
    dist = Table(["C", "f"], [[x, f] for x, f in stats.distribution.items()])
    return [
        Section("Letter complexity", letters),
        Section(
            "Distribution of complexities",
            dist,
            fields=[
                ("letters", len(alphabet)),
                ("mean", Num(stats.mean, 4)),
                ("sd", Num(stats.sd, 2)),
            ],
            notes=["sd uses the sample (N - 1) convention"],
        ),
    ]


def runs_section(table: FrequencyTable) -> Section:
    res = runs_test_uniform(table.densified())
    signs = "".join("+" if lab else "-" for lab in res.labels)
    return Section(
        "Runs test about the uniform expectation",
        fields=[
            ("E", Num(res.expected_frequency, 2)),
            ("signs", signs),
            ("r", res.runs),
            ("n", res.n),
            ("n1", res.n_below),
            ("n2", res.n_above),
            ("E(r)", Num(res.expected_runs, 2)),
            ("sigma_r", Num(res.sigma_runs, 4)),
            ("z", Num(res.z, 2)),
            ("significant", "yes" if res.significant else "no"),
        ],
        notes=["frequencies equal to E count as below; zero-count classes inside the range take part"],
    )


def _param_fields(fit: DiscreteModelFit) -> list:
    if fit.model == SS_GEOMETRIC:
        return [("p", Num(fit.params.p, 4)), ("a", Num(fit.params.a, 4))]
    return [("lambda", Num(fit.params.lam, 4))]


def fit_section(fit: DiscreteModelFit, title: str, labels: dict[int, str] | None = None,
                reference_df: int | None = None) -> Section:
    cols = ["x", "f(x)", "NP(x)"]
    if labels:
        cols = ["x", "members", "f(x)", "NP(x)"]
    table = Table(cols)
    for c in fit.classes:
        row = [c.label, c.observed, Num(c.expected, 2)]
        if labels:
            row.insert(1, labels.get(c.x, ""))
        table.rows.append(row)
    df_params = fit.df_for("classes-1-params")
    df_plain = fit.df_for("classes-1")
    fields = [("model", fit.model), ("method", fit.method)] + _param_fields(fit)
    fields += [("chi_square", Num(fit.chi_square, 2)), ("df", fit.df)]
    notes = []
    for df in sorted({df_params, df_plain}):
        pv = fit.p_value_at(df)
        fields.append((f"P(df={df})", Num(pv, 2) if pv is not None else "n/a"))
    if df_params != df_plain:
        notes.append(
            f"P depends on the degrees-of-freedom convention: df={df_params} subtracts the "
            f"{df_plain - df_params} estimated parameter(s) from classes-1, df={df_plain} does not"
        )
    if reference_df is not None and reference_df != fit.df:
        notes.append(f"the reference table lists DF = {reference_df}; P(df={reference_df}) is shown above for comparison")
    return Section(title, table, fields, notes)


def uncertainty_section(stats: UncertaintyStats) -> Section:
    return Section(
        "Mean orthographic uncertainty",
        fields=[
            ("N", stats.n),
            ("U_bar", Num(stats.u_bar, 4)),
            ("mean", Num(stats.mean, 4)),
            ("s2", Num(stats.variance, 4)),
            ("V", Num(stats.v, 6)),
        ],
        notes=["s2 uses the population (N) convention"],
    )


def comparison_section(stats: UncertaintyStats, others, variance_combination: str = "sum") -> Section:
    rows = comparison_table(stats, others, variance_combination)
    table = Table(["language", "U_bar", "V", "z", "significant"])
    for (label, u, v), res in zip(others, rows):
        table.rows.append([label, Num(u, 4), Num(v, 6), Num(res.z, 2), "yes" if res.significant else "no"])
    table.rows.append([stats.label or "target", Num(stats.u_bar, 4), Num(stats.v, 6), None, "-"])
    return Section(
        "Uncertainty comparison",
        table,
        fields=[("variance_combination", variance_combination)],
        notes=["significant means z > 1.96"],
    )


def distinctivity_section(matrix: DistanceMatrix) -> Section:
    stats = mean_distinctivities(matrix)
    table = Table(["glyph", "row_sum", "mean"])
    for label in matrix.labels:
        table.rows.append([label, matrix.row_sum(label), Num(stats.means[label], 2)])
    return Section("Mean distinctivity", table, fields=[("letters", len(matrix)), ("D_bar", Num(stats.overall, 2))])


def _members_by_count(mapping: MappingTable) -> dict[int, str]:
    groups = defaultdict(list)
    for ph, reps in mapping.phonemes:
        groups[len(reps)].append(ph.ipa)
    return {x: ", ".join(v) for x, v in groups.items()}


def _reference(root: Path) -> dict:
    found = sorted(root.glob("*_reference.json"))
    if not found:
        return {}
    return json.loads(found[0].read_text(encoding="utf-8"))


def bundle_report(bundle: DatasetBundle) -> Report:
    """Every analysis on a dataset bundle, in a fixed order."""
    report = Report()
    ref = _reference(bundle.root)
    hist = representation_histogram(bundle.mapping)
    members = _members_by_count(bundle.mapping)

    rep_ref = ref.get("representations")
    if rep_ref:
        params = make_params(rep_ref["model"], rep_ref["params"])
        fit = evaluate_fit(hist, rep_ref["model"], params, "classes-1-params", method="reference")
        report.add(fit_section(fit, "Graphemic representations: reference parameters", members, rep_ref.get("df")))
    fit = fit_discrete(hist, SS_GEOMETRIC, "chisq-min")
    report.add(fit_section(fit, "Graphemic representations: chi-square minimum", members))

    stats = mean_uncertainty(hist, label=bundle.alphabet.name or "target")
    report.add(uncertainty_section(stats))
    if bundle.comparison:
        sec = comparison_section(stats, bundle.comparison)
        sec.notes.append("comparison variances are supplied inputs, not derived here")
        report.add(sec)

    for sec in complexity_sections(bundle.alphabet):
        report.add(sec)
    report.add(runs_section(complexity_stats(bundle.alphabet).distribution))

    if bundle.connections is not None:
        conn_ref = ref.get("connections")
        if conn_ref:
            params = make_params(conn_ref["model"], conn_ref["params"])
            fit = evaluate_fit(bundle.connections, conn_ref["model"], params, "classes-1-params", method="reference")
            report.add(fit_section(fit, "Connections: Poisson at reference lambda", reference_df=conn_ref.get("df")))
        fit = fit_discrete(bundle.connections, POISSON, "chisq-min")
        report.add(fit_section(fit, "Connections: Poisson chi-square minimum"))
        moment = fit_discrete(bundle.connections, POISSON, "moment")
        report.add(fit_section(moment, "Connections: Poisson moment estimate"))
    if bundle.components is not None:
        table = Table(["x", "f(x)"], [[x, f] for x, f in bundle.components.items()])
        report.add(Section("Components per letter", table))

    report.add(distinctivity_section(bundle.matrix))
    return report
