import io
import json
from typing import Dict, List, Sequence

import pandas as pd
from jinja2 import Environment, FileSystemLoader

from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport
from nightday.backend.data_layer.models.correlation_models import LaggedCorrelation
from nightday.backend.data_layer.models.panel_spec import PanelKind, PanelSpec
from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.backend.data_layer.utilities.number_format import (
    UNDEFINED,
    format_coordinate,
    format_number,
    rounded,
)
from nightday.backend.report.svg_layout import (
    DEFAULT_COLOR,
    PALETTE,
    LinearScale,
    group_colors,
    polyline_points,
)
from nightday.system.exceptions import EmptyInputError, InvalidSpecError
from nightday.system.path_getters import get_template_folder_path

_TEMPLATE_ENVIRONMENT = None


def get_template_environment() -> Environment:
    global _TEMPLATE_ENVIRONMENT
    if _TEMPLATE_ENVIRONMENT is None:
        _TEMPLATE_ENVIRONMENT = Environment(
            loader=FileSystemLoader(get_template_folder_path()),
            autoescape=True,
            trim_blocks=True,
            keep_trailing_newline=True,
        )
    return _TEMPLATE_ENVIRONMENT


def _check_spec(spec: PanelSpec, kind: PanelKind) -> str:
    if spec.kind != kind.value:
        raise InvalidSpecError(f"a `{spec.kind}` panel spec was given to the {kind.value} emitter")
    return spec.checked_format()


def _csv_document(rows: List[Dict[str, str]], columns: List[str]) -> str:
    buffer = io.StringIO()
    pd.DataFrame(rows, columns=columns, dtype=str).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def _json_document(spec: PanelSpec, data: list) -> str:
    document = {"panel": {"kind": spec.kind, "title": spec.title}, "data": data}
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _render(template_name: str, **context) -> str:
    return get_template_environment().get_template(template_name).render(**context)


def emit_timeseries(rs: ReturnSeries, spec: PanelSpec) -> str:
    """Intra-day returns over k (panel a) and overnight returns over k (panel b); no first-day night."""
    output_format = _check_spec(spec, PanelKind.TIMESERIES)
    if len(rs) == 0:
        raise EmptyInputError("cannot draw an empty return series")

    dates = [day.isoformat() for day in rs.dates]
    nights = [None] + [float(value) for value in rs.n]

    if output_format == "csv":
        rows = [
            {"date": day, "d": format_number(d), "n": "" if n is None else format_number(n)}
            for day, d, n in zip(dates, rs.d, nights)
        ]
        return _csv_document(rows, ["date", "d", "n"])

    if output_format == "json":
        data = [{"date": day, "d": rounded(float(d)), "n": rounded(n)} for day, d, n in zip(dates, rs.d, nights)]
        return _json_document(spec, data)

    width, panel_height, margin_left, margin_right = 900, 230, 70, 20
    plot_right = width - margin_right
    x_scale = LinearScale(1, max(len(rs), 2), margin_left, plot_right)
    panels = []
    for index, (panel_id, label, days, values, color) in enumerate(
            [
                ("intra-day", "(a) intra-day log-returns d_k", range(1, len(rs) + 1), rs.d, PALETTE[0]),
                ("overnight", "(b) overnight log-returns n_k", range(2, len(rs) + 1), rs.n, PALETTE[1]),
            ]
    ):
        top = 50 + index * (panel_height + 40)
        bottom = top + panel_height
        y_scale = LinearScale.fit(list(values), bottom, top, include_zero=True)
        panels.append(
            {
                "id": panel_id,
                "label": label,
                "label_y": top - 6,
                "top": top,
                "bottom": bottom,
                "zero_y": format_coordinate(y_scale(0.0)),
                "y_ticks": y_scale.ticks(),
                "points": polyline_points(list(days), list(values), x_scale, y_scale),
                "color": color,
            }
        )
    return _render(
        "timeseries.svg.j2",
        title=spec.title or f"{rs.symbol}: intra-day and overnight log-returns",
        width=width,
        height=50 + 2 * (panel_height + 40),
        margin_left=margin_left,
        plot_right=plot_right,
        first_date=dates[0],
        last_date=dates[-1],
        panels=panels,
    )


def emit_scatter(reports: Sequence[AsymmetryReport], spec: PanelSpec) -> str:
    """One point per equity at (C_dn, C_nd); points above the diagonal have C_nd > C_dn."""
    output_format = _check_spec(spec, PanelKind.SCATTER)
    if not reports:
        raise EmptyInputError("no reports to plot")

    if output_format == "csv":
        rows = [
            {
                "symbol": report.symbol,
                "group": report.group or "",
                "x_c_dn": format_number(report.c_dn),
                "y_c_nd": format_number(report.c_nd),
            }
            for report in reports
        ]
        return _csv_document(rows, ["symbol", "group", "x_c_dn", "y_c_nd"])

    if output_format == "json":
        data = [
            {"symbol": report.symbol, "group": report.group, "x_c_dn": rounded(report.c_dn),
             "y_c_nd": rounded(report.c_nd)}
            for report in reports
        ]
        return _json_document(spec, data)

    size, margin = 560, 70
    plot_left, plot_right, plot_top, plot_bottom = margin, size - 30, 40, size - margin
    # shared scale on both axes so the diagonal is the identity
    all_values = [report.c_dn for report in reports] + [report.c_nd for report in reports]
    x_scale = LinearScale.fit(all_values, plot_left, plot_right, include_zero=True)
    y_scale = LinearScale(x_scale.domain_low, x_scale.domain_high, plot_bottom, plot_top)
    colors = group_colors([report.group for report in reports])
    points = [
        {
            "cx": format_coordinate(x_scale(report.c_dn)),
            "cy": format_coordinate(y_scale(report.c_nd)),
            "color": colors.get(report.group, DEFAULT_COLOR),
            "label": f"{report.symbol}: C_nd={format_number(report.c_nd)} C_dn={format_number(report.c_dn)}",
        }
        for report in reports
    ]
    low, high = x_scale.domain_low, x_scale.domain_high
    return _render(
        "scatter.svg.j2",
        title=spec.title or "C_nd against C_dn, one point per equity",
        size=size,
        plot_left=plot_left,
        plot_right=plot_right,
        plot_top=plot_top,
        plot_bottom=plot_bottom,
        diagonal={
            "x1": format_coordinate(x_scale(low)),
            "y1": format_coordinate(y_scale(low)),
            "x2": format_coordinate(x_scale(high)),
            "y2": format_coordinate(y_scale(high)),
        },
        x_ticks=x_scale.ticks(),
        y_ticks=y_scale.ticks(),
        points=points,
    )


def emit_ratios(reports: Sequence[AsymmetryReport], spec: PanelSpec) -> str:
    """Ratio C_nd / C_dn per equity in the given order; undefined ratios stay visible."""
    output_format = _check_spec(spec, PanelKind.RATIO_BARS)
    if not reports:
        raise EmptyInputError("no reports to plot")

    if output_format == "csv":
        rows = [
            {
                "symbol": report.symbol,
                "group": report.group or "",
                "ratio": format_number(report.ratio) if report.ratio_defined else UNDEFINED,
                "c_nd": format_number(report.c_nd),
                "c_dn": format_number(report.c_dn),
            }
            for report in reports
        ]
        return _csv_document(rows, ["symbol", "group", "ratio", "c_nd", "c_dn"])

    if output_format == "json":
        data = [
            {
                "symbol": report.symbol,
                "group": report.group,
                "ratio": rounded(report.ratio) if report.ratio_defined else None,
                "ratio_defined": report.ratio_defined,
                "c_nd": rounded(report.c_nd),
                "c_dn": rounded(report.c_dn),
            }
            for report in reports
        ]
        return _json_document(spec, data)

    defined = [report for report in reports if report.ratio_defined]
    undefined = [report for report in reports if not report.ratio_defined]
    slot, margin_left = 26, 60
    width = max(420, margin_left + 20 + slot * len(reports))
    plot_left, plot_right, plot_top, plot_bottom = margin_left, width - 20, 40, 300
    label_y = plot_bottom + 12
    y_scale = LinearScale.fit([report.ratio for report in defined], plot_bottom, plot_top, include_zero=True)
    zero_y = y_scale(0.0)
    colors = group_colors([report.group for report in reports])

    bars = []
    for index, report in enumerate(reports):
        x = plot_left + 4 + index * slot
        bar = {
            "symbol": report.symbol,
            "x": format_coordinate(x),
            "label_x": format_coordinate(x + 4),
            "width": format_coordinate(slot - 8),
            "color": colors.get(report.group, DEFAULT_COLOR),
        }
        if report.ratio_defined:
            top = y_scale(report.ratio)
            bar.update(
                y=format_coordinate(min(top, zero_y)),
                height=format_coordinate(abs(zero_y - top)),
                label=f"{report.symbol}: C_nd/C_dn={format_number(report.ratio)}",
            )
        else:
            bar.update(y=format_coordinate(zero_y), height="0.00", label=f"{report.symbol}: {UNDEFINED}")
        bars.append(bar)

    legend_top = plot_bottom + 80
    legends = [
        {"group": group, "color": color, "x": plot_left + 110 * index, "y": legend_top}
        for index, (group, color) in enumerate(colors.items())
    ]
    undefined_top = legend_top + (30 if legends else 10)
    undefined_items = [
        {"symbol": report.symbol, "c_dn": format_number(report.c_dn), "y": undefined_top + 14 * index}
        for index, report in enumerate(undefined)
    ]
    one_y = format_coordinate(y_scale(1.0)) if y_scale.domain_low <= 1.0 <= y_scale.domain_high else None
    return _render(
        "ratio_bars.svg.j2",
        title=spec.title or "C_nd / C_dn per equity",
        width=width,
        height=undefined_top + 14 * len(undefined_items) + 10,
        plot_left=plot_left,
        plot_right=plot_right,
        plot_top=plot_top,
        plot_bottom=plot_bottom,
        zero_y=format_coordinate(zero_y),
        one_y=one_y,
        y_ticks=y_scale.ticks(),
        label_y=label_y,
        bars=bars,
        legends=legends,
        undefined=undefined_items,
    )


def emit_lags(lagged: Sequence[LaggedCorrelation], spec: PanelSpec, symbol: str = "") -> str:
    """Night-leads-day and day-leads-night correlations against lag."""
    output_format = _check_spec(spec, PanelKind.LAGS)
    if not lagged:
        raise EmptyInputError("no lagged correlations to plot")

    if output_format == "csv":
        rows = [
            {
                "lag": str(entry.lag),
                "night_leads_day": format_number(entry.night_leads_day.estimate),
                "day_leads_night": format_number(entry.day_leads_night.estimate),
                "n_pairs": str(entry.night_leads_day.n_pairs),
            }
            for entry in lagged
        ]
        return _csv_document(rows, ["lag", "night_leads_day", "day_leads_night", "n_pairs"])

    if output_format == "json":
        data = [
            {
                "lag": entry.lag,
                "night_leads_day": rounded(entry.night_leads_day.estimate),
                "day_leads_night": rounded(entry.day_leads_night.estimate),
                "n_pairs": entry.night_leads_day.n_pairs,
            }
            for entry in lagged
        ]
        return _json_document(spec, data)

    width, height = 640, 400
    plot_left, plot_right, plot_top, plot_bottom = 60, width - 20, 40, height - 50
    lags = [entry.lag for entry in lagged]
    x_scale = LinearScale(min(lags), max(max(lags), min(lags) + 1), plot_left, plot_right)
    estimates = [entry.night_leads_day.estimate for entry in lagged] + [
        entry.day_leads_night.estimate for entry in lagged
    ]
    y_scale = LinearScale.fit(estimates, plot_bottom, plot_top, include_zero=True)
    lines = [
        {
            "label": "night leads day",
            "points": polyline_points(lags, [entry.night_leads_day.estimate for entry in lagged], x_scale, y_scale),
            "color": PALETTE[1],
            "legend_y": plot_top + 12,
        },
        {
            "label": "day leads night",
            "points": polyline_points(lags, [entry.day_leads_night.estimate for entry in lagged], x_scale, y_scale),
            "color": PALETTE[0],
            "legend_y": plot_top + 26,
        },
    ]
    return _render(
        "lags.svg.j2",
        title=spec.title or f"{symbol} lagged volatility cross-correlations".strip(),
        width=width,
        height=height,
        plot_left=plot_left,
        plot_right=plot_right,
        plot_top=plot_top,
        plot_bottom=plot_bottom,
        zero_y=format_coordinate(y_scale(0.0)),
        x_ticks=[(format_coordinate(x_scale(lag)), str(lag)) for lag in lags],
        y_ticks=y_scale.ticks(),
        lines=lines,
    )
