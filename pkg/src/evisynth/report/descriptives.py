"""Descriptive summary tables and standardised figures from extraction
records.

Outbreak reports get temporal distribution, geographic spread, and
case-count figures plus count/proportion tables; model reports get
architecture, stochasticity, transmission-route, and code-availability
breakdowns. Figures render through matplotlib's Agg backend as PNG;
choropleths fall back to country bar charts plus tables.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


@dataclass
class ReportTable:
    number: int
    title: str
    markdown: str
    row_count: int


@dataclass
class ReportFigure:
    number: int
    title: str
    caption: str
    path: str
    row_count: int


def _markdown_table(headers: list[str], rows: list[list]) -> str:
    lines = ["| " + " | ".join(headers) + " |",
             "| " + " | ".join("---" for _ in headers) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(lines)


def _count_table(number: int, title: str, counter: Counter,
                 value_header: str) -> ReportTable:
    total = sum(counter.values())
    rows = [[name, count, f"{100 * count / total:.1f}%"]
            for name, count in counter.most_common()]
    return ReportTable(number, title,
                       _markdown_table([value_header, "Count", "Proportion"],
                                       rows),
                       row_count=len(rows))


def _bar_figure(path: Path, title: str, labels: list, values: list,
                xlabel: str, ylabel: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar([str(label) for label in labels], values, color="#39618f")
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if labels and max(len(str(label)) for label in labels) > 8:
        ax.tick_params(axis="x", rotation=45)
        for tick in ax.get_xticklabels():
            tick.set_ha("right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _figure_path(figures_dir: Path, name: str, rel_prefix: str | None) -> tuple[Path, str]:
    """(file location, path string stored in figures/markdown)."""
    location = figures_dir / name
    stored = f"{rel_prefix}/{name}" if rel_prefix else str(location)
    return location, stored


def _outbreak_descriptives(records: list, figures_dir: Path,
                           rel_prefix: str | None):
    stats: dict = {"outbreak_count": len(records),
                   "article_count": len({r.article_id for r in records})}
    tables: list[ReportTable] = []
    figures: list[ReportFigure] = []

    years = [r.outbreak_start_year for r in records
             if r.outbreak_start_year is not None]
    countries = Counter(r.outbreak_country for r in records
                        if r.outbreak_country)
    if years:
        stats["temporal_span"] = f"{min(years)}-{max(years)}"
    stats["country_count"] = len(countries)
    stats["ongoing_count"] = sum(1 for r in records
                                 if r.outbreak_is_currently_ongoing)
    stats["total_confirmed_cases"] = sum(r.cases_confirmed or 0 for r in records)
    stats["total_deaths"] = sum(r.deaths or 0 for r in records)

    if countries:
        tables.append(_count_table(len(tables) + 1, "Outbreaks by country",
                                   countries, "Country"))
    detection = Counter(r.mode_of_detection or "Unspecified" for r in records)
    if records:
        tables.append(_count_table(len(tables) + 1,
                                   "Mode of detection breakdown", detection,
                                   "Mode of detection"))
        sources = Counter(r.outbreak_source or "Unknown" for r in records)
        tables.append(_count_table(len(tables) + 1,
                                   "Outbreak source categories", sources,
                                   "Source"))
        burden_rows = []
        for field, label in (("cases_confirmed", "Confirmed"),
                             ("cases_probable", "Probable"),
                             ("cases_suspected", "Suspected"),
                             ("cases_unspecified", "Unspecified"),
                             ("cases_asymptomatic", "Asymptomatic"),
                             ("cases_severe", "Severe"),
                             ("deaths", "Deaths")):
            total = sum(getattr(r, field) or 0 for r in records)
            reported = sum(1 for r in records if getattr(r, field) is not None)
            burden_rows.append([label, int(total), reported])
        tables.append(ReportTable(
            len(tables) + 1, "Case burden by confirmation status",
            _markdown_table(["Status", "Total count", "Outbreaks reporting"],
                            burden_rows),
            row_count=len(burden_rows)))

    if years:
        year_counts = Counter(years)
        labels = sorted(year_counts)
        location, stored = _figure_path(figures_dir,
                                        "fig1_outbreaks_by_year.png",
                                        rel_prefix)
        _bar_figure(location, "Outbreak temporal distribution", labels,
                    [year_counts[y] for y in labels], "Start year",
                    "Outbreaks")
        figures.append(ReportFigure(1, "Outbreak temporal distribution",
                                    "Number of recorded outbreaks by start "
                                    "year.",
                                    stored, row_count=len(labels)))
    if countries:
        top = countries.most_common(15)
        location, stored = _figure_path(figures_dir,
                                        "fig2_outbreaks_by_country.png",
                                        rel_prefix)
        _bar_figure(location, "Geographic spread", [c for c, _ in top],
                    [n for _, n in top], "Country", "Outbreaks")
        figures.append(ReportFigure(len(figures) + 1, "Geographic spread",
                                    "Outbreak counts for affected countries.",
                                    stored, row_count=len(top)))
    with_cases = [(r.outbreak_start_year, r.cases_confirmed) for r in records
                  if r.cases_confirmed is not None
                  and r.outbreak_start_year is not None]
    if with_cases:
        by_year = Counter()
        for year, cases in with_cases:
            by_year[year] += cases
        labels = sorted(by_year)
        location, stored = _figure_path(figures_dir,
                                        "fig3_confirmed_cases_by_year.png",
                                        rel_prefix)
        _bar_figure(location, "Confirmed case counts", labels,
                    [by_year[y] for y in labels], "Start year",
                    "Confirmed cases")
        figures.append(ReportFigure(len(figures) + 1, "Confirmed case counts",
                                    "Total confirmed cases by outbreak start "
                                    "year.",
                                    stored, row_count=len(labels)))
    return stats, figures, tables


def _model_descriptives(records: list, figures_dir: Path,
                        rel_prefix: str | None):
    stats: dict = {"model_count": len(records),
                   "article_count": len({r.article_id for r in records})}
    tables: list[ReportTable] = []
    figures: list[ReportFigure] = []
    if records:
        architecture = Counter(r.model_type for r in records)
        stoch = Counter(r.stoch_deter or "Unspecified" for r in records)
        routes = Counter(route for r in records for route in r.transmission_route)
        code = Counter("Available" if r.code_available else "Not available"
                       for r in records)
        tables.append(_count_table(1, "Model type counts and proportions",
                                   architecture, "Model type"))
        tables.append(_count_table(2, "Deterministic vs stochastic", stoch,
                                   "Classification"))
        tables.append(_count_table(3, "Transmission routes", routes, "Route"))
        tables.append(_count_table(4, "Modelling assumptions",
                                   Counter(a for r in records
                                           for a in r.assumptions),
                                   "Assumption"))
        tables.append(_count_table(5, "Intervention categories",
                                   Counter(i for r in records
                                           for i in r.interventions_type),
                                   "Intervention"))
        tables.append(_count_table(6, "Code availability and language",
                                   Counter(
                                       (r.coding_language or "Unspecified")
                                       if r.code_available else "No code"
                                       for r in records),
                                   "Language"))
        for counter, name, slug in ((architecture, "Model architecture "
                                     "distribution", "architecture"),
                                    (stoch, "Stochasticity classification",
                                     "stochasticity"),
                                    (routes, "Transmission route breakdown",
                                     "routes"),
                                    (code, "Code availability", "code")):
            location, stored = _figure_path(
                figures_dir, f"fig{len(figures) + 1}_{slug}.png", rel_prefix)
            labels = [label for label, _ in counter.most_common()]
            _bar_figure(location, name, labels,
                        [counter[label] for label in labels], "", "Models")
            figures.append(ReportFigure(len(figures) + 1, name,
                                        f"{name} across extracted models.",
                                        stored, row_count=len(labels)))
    return stats, figures, tables


def compute_descriptives(records: list, kind: str, figures_dir: str | Path,
                         rel_prefix: str | None = None
                         ) -> tuple[dict, list[ReportFigure], list[ReportTable]]:
    """Aggregate extraction records into stats, figures, and tables.

    ``kind`` is "outbreak" or "model". Figure files land in
    ``figures_dir``; when ``rel_prefix`` is given the stored figure
    paths are relative ("figures/figN_...png") so artefacts carry no
    machine-specific prefixes. An empty dataset yields empty
    figure/table lists plus a placeholder note in the stats.
    """
    figures_dir = Path(figures_dir)
    figures_dir.mkdir(parents=True, exist_ok=True)
    if kind == "outbreak":
        stats, figures, tables = _outbreak_descriptives(records, figures_dir,
                                                        rel_prefix)
    elif kind == "model":
        stats, figures, tables = _model_descriptives(records, figures_dir,
                                                     rel_prefix)
    else:
        raise ValueError(f"unknown report kind {kind!r}")
    if not records:
        stats["note"] = ("No extracted records are available yet; this "
                         "report is a placeholder awaiting data.")
    return stats, figures, tables
