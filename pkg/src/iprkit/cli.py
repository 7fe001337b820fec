"""Command-line front end for the whole pipeline.

Every subcommand loads a premium/GDP CSV, derives the penetration-rate
series, and runs one stage: printing the series, summarizing it, drawing
correlograms, testing stationarity, fitting or selecting a model, checking
residuals, or forecasting. Output is aligned text (7 significant digits) or
a single JSON object (`--json`, or environment variable IPRKIT_FORMAT=json),
and `--plot DIR` writes deterministic SVG plots with plain-text fallbacks.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or malformed
input), 3 computation error (failed fit, undefined statistic).
"""

import argparse
import json
import math
import os
from dataclasses import dataclass

from . import plots
from .correlation import acf, pacf, significance_bounds
from .diagnostics import accuracy, ks_normality, ljung_box
from .errors import ComputationError, DataError
from .estimation import ModelOrder, fit
from .forecasting import forecast
from .ingest import load_csv, to_timeseries
from .selection import SearchConfig, auto_select
from .series import summary
from .stationarity import adf_test, kpss_test, pp_test

__all__ = ["CommandOutcome", "run", "main"]

_COMPONENTS = ("total", "life", "nonlife")


@dataclass(frozen=True)
class CommandOutcome:
    """What a CLI invocation produced.

    exit_code 0 means success; 1 a usage problem, 2 a data problem, 3 a
    computation problem. `payload` is the text (or JSON) that belongs on
    stdout; `artifacts` lists any plot files written.
    """

    exit_code: int
    payload: str
    artifacts: tuple = ()


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting."""

    def error(self, message):
        raise _UsageError(f"{self.format_usage().rstrip()}\nerror: {message}")


def _fmt(x):
    return f"{x:.7g}"


def _build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS,
                        help="emit one JSON object instead of text")
    common.add_argument("--plot", metavar="DIR", default=argparse.SUPPRESS,
                        help="write SVG plots (with .txt fallbacks) to DIR")
    common.add_argument("--component", choices=_COMPONENTS, default="total",
                        help="premium component for the rate series")

    parser = _Parser(
        prog="iprkit",
        description="Insurance-penetration-rate ARIMA toolkit",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("ipr", parents=[common],
                       help="print the penetration-rate series")
    p.add_argument("csv", help="premium/GDP CSV file")

    p = sub.add_parser("summary", parents=[common],
                       help="six-number summary of the rate series")
    p.add_argument("csv")

    for name, text in (("acf", "autocorrelations"),
                       ("pacf", "partial autocorrelations")):
        p = sub.add_parser(name, parents=[common],
                           help=f"{text} with significance bounds")
        p.add_argument("csv")
        p.add_argument("--lags", type=int, default=15,
                       help="highest lag to report (default 15)")

    p = sub.add_parser("test", parents=[common],
                       help="stationarity test on the rate series")
    p.add_argument("kind", choices=("adf", "pp", "kpss"))
    p.add_argument("csv")
    p.add_argument("--lag", type=int, default=None,
                   help="ADF lag order (ADF only; PP/KPSS pick their own)")
    p.add_argument("--null", choices=("level", "trend"), default="level",
                   help="KPSS null hypothesis (KPSS only)")

    def add_model_flags(p, required):
        p.add_argument("--order", required=required, metavar="p,d,q",
                       help="non-seasonal order" +
                            ("" if required else
                             " (omit to select automatically)"))
        p.add_argument("--seasonal", metavar="P,D,Q,s", default=None,
                       help="seasonal order and period")
        p.add_argument("--drift", action="store_true",
                       help="include a drift term")

    p = sub.add_parser("fit", parents=[common],
                       help="fit one model by exact maximum likelihood")
    p.add_argument("csv")
    add_model_flags(p, required=True)

    p = sub.add_parser("auto", parents=[common],
                       help="stepwise automatic order selection")
    p.add_argument("csv")
    p.add_argument("--criterion", choices=("aic", "aicc", "bic"),
                   default="aic")
    p.add_argument("--trace", action="store_true",
                   help="print every candidate scored")

    p = sub.add_parser("diagnose", parents=[common],
                       help="residual diagnostics for a model")
    p.add_argument("csv")
    add_model_flags(p, required=False)
    p.add_argument("--lags", type=int, default=None,
                   help="Ljung-Box pooling lags (default min(10, n/5))")

    p = sub.add_parser("forecast", parents=[common],
                       help="forecast with confidence bands")
    p.add_argument("csv")
    add_model_flags(p, required=False)
    p.add_argument("--h", type=int, required=True, dest="horizon",
                   help="forecast horizon (steps ahead)")
    p.add_argument("--level", default="95",
                   help="comma-separated confidence levels, e.g. 95,99")
    return parser


def _series_for(ns):
    records = load_csv(ns.csv)
    return to_timeseries(records, ns.component)


def _parse_ints(text, count, flag):
    parts = text.split(",")
    if len(parts) != count:
        raise _UsageError(
            f"error: {flag} expects {count} comma-separated integers, "
            f"got {text!r}"
        )
    try:
        return [int(part) for part in parts]
    except ValueError:
        raise _UsageError(
            f"error: {flag} expects integers, got {text!r}") from None


def _order_from_flags(ns):
    p, d, q = _parse_ints(ns.order, 3, "--order")
    big_p = big_d = big_q = 0
    s = 1
    if ns.seasonal is not None:
        big_p, big_d, big_q, s = _parse_ints(ns.seasonal, 4, "--seasonal")
    try:
        return ModelOrder(p=p, d=d, q=q, P=big_p, D=big_d, Q=big_q, s=s,
                          drift=ns.drift)
    except ValueError as exc:
        raise _UsageError(f"error: {exc}") from None


def _model_for(ns, ts):
    """Model from explicit flags, or the automatic selection's winner."""
    if getattr(ns, "order", None):
        return fit(ts, _order_from_flags(ns))
    model, _ = auto_select(ts, SearchConfig())
    return model


def _model_doc(model):
    order = model.order
    return {
        "order": {"p": order.p, "d": order.d, "q": order.q,
                  "P": order.P, "D": order.D, "Q": order.Q,
                  "s": order.s, "drift": order.drift},
        "description": order.describe(),
        "coefficients": dict(zip(model.coefficient_names,
                                 model.coefficients)),
        "std_errors": dict(zip(model.coefficient_names, model.std_errors)),
        "sigma2": model.sigma2,
        "loglik": model.loglik,
        "aic": model.aic,
        "aicc": model.aicc,
        "bic": model.bic,
        "n_effective": model.n_effective,
    }


def _test_doc(report):
    return {
        "kind": report.kind,
        "statistic": report.statistic,
        "lag": report.lag,
        "p_value": report.p_value,
        "clamped": report.clamped,
        "p_display": report.p_display,
        "null_hypothesis": report.null_hypothesis,
    }


def _test_lines(report):
    return [
        f"{report.kind} statistic = {_fmt(report.statistic)} "
        f"(lag {report.lag})",
        f"p-value = {report.p_display}",
        f"null hypothesis: {report.null_hypothesis.replace('_', ' ')}",
    ]


def _correlogram(rows, n):
    bound = significance_bounds(n)
    doc_rows = [{"lag": r.lag, "value": r.value,
                 "significant": abs(r.value) > bound} for r in rows]
    lines = [f"{'lag':>4} {'value':>12}", ]
    for r in rows:
        mark = " *" if abs(r.value) > bound else ""
        lines.append(f"{r.lag:>4} {r.value:>12.7g}{mark}")
    lines.append(f"95% bounds: ±{_fmt(bound)} (* = outside)")
    return bound, doc_rows, lines


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (json_doc, text_lines, plot_jobs)
# ---------------------------------------------------------------------------

def _cmd_ipr(ns):
    ts = _series_for(ns)
    labels = [ts.period_label(i) for i in range(len(ts))]
    doc = {
        "command": "ipr",
        "component": ns.component,
        "start": list(ts.start),
        "frequency": ts.frequency,
        "periods": labels,
        "values": list(ts.values),
    }
    lines = [f"{lab:<8} {_fmt(v):>12}" for lab, v in zip(labels, ts.values)]
    title = f"Insurance penetration rate ({ns.component})"
    jobs = [("series",
             plots.line_plot_svg(ts.values, labels, title),
             plots.line_plot_ascii(ts.values, title))]
    return doc, lines, jobs


def _cmd_summary(ns):
    ts = _series_for(ns)
    stats = summary(ts)
    fields = ("min", "q1", "median", "mean", "q3", "max")
    doc = {"command": "summary", "component": ns.component,
           "n": len(ts)}
    doc.update({name: getattr(stats, name) for name in fields})
    lines = [f"{name:<8} {_fmt(getattr(stats, name)):>12}"
             for name in fields]
    labels = [ts.period_label(i) for i in range(len(ts))]
    title = f"Insurance penetration rate ({ns.component})"
    jobs = [("series",
             plots.line_plot_svg(ts.values, labels, title),
             plots.line_plot_ascii(ts.values, title))]
    return doc, lines, jobs


def _cmd_correlogram(ns):
    ts = _series_for(ns)
    func = acf if ns.command == "acf" else pacf
    rows = func(ts, ns.lags)
    shown = [r for r in rows if r.lag > 0]
    bound, doc_rows, lines = _correlogram(shown, len(ts))
    doc = {"command": ns.command, "component": ns.component,
           "lags": ns.lags, "bound": bound, "rows": doc_rows}
    title = ns.command.upper()
    values = [r.value for r in shown]
    jobs = [(ns.command,
             plots.stem_plot_svg(values, bound, title),
             plots.stem_plot_ascii(values, bound, title))]
    return doc, lines, jobs


def _cmd_test(ns):
    ts = _series_for(ns)
    if ns.kind == "adf":
        report = adf_test(ts, lag_order=ns.lag)
    elif ns.kind == "pp":
        if ns.lag is not None:
            raise _UsageError("error: --lag applies to the ADF test only")
        report = pp_test(ts)
    else:
        if ns.lag is not None:
            raise _UsageError("error: --lag applies to the ADF test only")
        report = kpss_test(ts, null=ns.null)
    doc = {"command": "test", "component": ns.component}
    doc.update(_test_doc(report))
    return doc, _test_lines(report), []


def _cmd_fit(ns):
    ts = _series_for(ns)
    model = fit(ts, _order_from_flags(ns))
    doc = {"command": "fit", "component": ns.component}
    doc.update(_model_doc(model))
    resid = model.full_residuals
    title = f"Residuals of {model.order.describe()}"
    labels = [resid.period_label(i) for i in range(len(resid))]
    jobs = [("residuals",
             plots.line_plot_svg(resid.values, labels, title),
             plots.line_plot_ascii(resid.values, title))]
    return doc, model.summary_lines(), jobs


def _cmd_auto(ns):
    ts = _series_for(ns)
    model, trace = auto_select(ts, SearchConfig(criterion=ns.criterion))
    value = getattr(model, ns.criterion)
    doc = {"command": "auto", "component": ns.component,
           "criterion": ns.criterion, "selected": _model_doc(model)}
    lines = []
    if ns.trace:
        doc["trace"] = [
            {"order": order.describe(),
             "value": None if math.isinf(v) else v}
            for order, v in trace.entries
        ]
        lines += trace.to_text() + [""]
    lines.append(f"Selected: {model.order.describe()} : "
                 f"{ns.criterion.upper()} = {_fmt(value)}")
    lines += model.summary_lines()
    return doc, lines, []


def _cmd_diagnose(ns):
    ts = _series_for(ns)
    model = _model_for(ns, ts)
    resid = model.full_residuals
    order = model.order
    fitdf = order.p + order.q + order.P + order.Q

    lb = ljung_box(resid, lags=ns.lags, fitdf=fitdf)
    ks = ks_normality(resid)
    tests = [adf_test(resid), pp_test(resid), kpss_test(resid)]
    corr_lags = min(15, len(resid) - 1)
    racf = [r for r in acf(resid, corr_lags) if r.lag > 0]
    rpacf = pacf(resid, corr_lags)
    bound, racf_doc, racf_lines = _correlogram(racf, len(resid))
    _, rpacf_doc, rpacf_lines = _correlogram(rpacf, len(resid))
    fitted = [x - e for x, e in zip(ts.values, resid.values)]
    naive_lag = ts.frequency if ts.frequency > 1 else 1
    acc = accuracy(ts, fitted, ts, naive_lag=naive_lag)

    doc = {
        "command": "diagnose",
        "component": ns.component,
        "model": _model_doc(model),
        "ljung_box": {"q_stat": lb.q_stat, "lags_used": lb.lags_used,
                      "fitdf": lb.fitdf, "df": lb.df,
                      "p_value": lb.p_value},
        "ks_normality": {"d_stat": ks.d_stat, "p_value": ks.p_value,
                         "params_estimated": ks.params_estimated},
        "residual_tests": [_test_doc(r) for r in tests],
        "residual_acf": racf_doc,
        "residual_pacf": rpacf_doc,
        "accuracy": {name: getattr(acc, name)
                     for name in ("me", "rmse", "mae", "mpe", "mape",
                                  "mase", "acf1")},
        "mase_naive_lag": naive_lag,
    }
    lines = [f"Model: {order.describe()}", "", lb.to_text(), ks.to_text(), ""]
    for report in tests:
        lines += _test_lines(report) + [""]
    lines += ["Residual ACF:"] + racf_lines
    lines += ["", "Residual PACF:"] + rpacf_lines
    lines += ["", f"In-sample accuracy (naive lag {naive_lag}):"]
    lines += acc.to_text()

    title = f"Residuals of {order.describe()}"
    labels = [resid.period_label(i) for i in range(len(resid))]
    jobs = [
        ("residuals",
         plots.line_plot_svg(resid.values, labels, title),
         plots.line_plot_ascii(resid.values, title)),
        ("residual_acf",
         plots.stem_plot_svg([r.value for r in racf], bound,
                             "Residual ACF"),
         plots.stem_plot_ascii([r.value for r in racf], bound,
                               "Residual ACF")),
        ("residual_pacf",
         plots.stem_plot_svg([r.value for r in rpacf], bound,
                             "Residual PACF"),
         plots.stem_plot_ascii([r.value for r in rpacf], bound,
                               "Residual PACF")),
    ]
    return doc, lines, jobs


def _parse_levels(text):
    levels = []
    for token in text.split(","):
        try:
            value = float(token)
        except ValueError:
            raise _UsageError(
                f"error: --level expects numbers, got {token!r}") from None
        if value >= 1.0:  # accept percentage form: 95 means 0.95
            value /= 100.0
        if not 0.0 < value < 1.0:
            raise _UsageError(
                f"error: confidence level {token} outside (0, 100)")
        levels.append(value)
    return levels


def _cmd_forecast(ns):
    if ns.horizon < 1:
        raise _UsageError("error: --h must be at least 1")
    ts = _series_for(ns)
    model = _model_for(ns, ts)
    levels = _parse_levels(ns.level)
    result = forecast(model, ns.horizon, levels)

    doc = {
        "command": "forecast",
        "component": ns.component,
        "model": _model_doc(model),
        "origin": list(result.origin),
        "horizon": result.horizon,
        "labels": list(result.labels),
        "points": list(result.points),
        "bands": {
            f"{level:g}": {"lower": list(lower), "upper": list(upper)}
            for level, (lower, upper) in sorted(result.bands.items())
        },
    }
    width = max(max(len(lab) for lab in result.labels), len("Point"))
    header = f"{'Point':<{width}} {'Forecast':>12}"
    for level in sorted(result.bands):
        pct = f"{100 * level:g}"
        header += f" {'Lo ' + pct:>12} {'Hi ' + pct:>12}"
    lines = [header]
    for j, lab in enumerate(result.labels):
        row = f"{lab:<{width}} {_fmt(result.points[j]):>12}"
        for level in sorted(result.bands):
            lower, upper = result.bands[level]
            row += f" {_fmt(lower[j]):>12} {_fmt(upper[j]):>12}"
        lines.append(row)

    title = f"Forecast from {model.order.describe()}"
    jobs = [("forecast",
             plots.forecast_plot_svg(ts.values, result, title),
             plots.forecast_plot_ascii(ts.values, result, title))]
    return doc, lines, jobs


_HANDLERS = {
    "ipr": _cmd_ipr,
    "summary": _cmd_summary,
    "acf": _cmd_correlogram,
    "pacf": _cmd_correlogram,
    "test": _cmd_test,
    "fit": _cmd_fit,
    "auto": _cmd_auto,
    "diagnose": _cmd_diagnose,
    "forecast": _cmd_forecast,
}


def _output_format(ns):
    if getattr(ns, "json", False):
        return "json"
    env = os.environ.get("IPRKIT_FORMAT", "").strip().lower()
    return "json" if env == "json" else "text"


def _jsonable(obj):
    """Replace non-finite floats with null so the payload stays strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {key: _jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(value) for value in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return obj


def _write_plots(directory, jobs):
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, svg_text, ascii_text in jobs:
        svg_path = os.path.join(directory, f"{name}.svg")
        with open(svg_path, "w", encoding="utf-8") as handle:
            handle.write(svg_text)
        txt_path = os.path.join(directory, f"{name}.txt")
        with open(txt_path, "w", encoding="utf-8") as handle:
            handle.write(ascii_text)
        paths += [svg_path, txt_path]
    return tuple(paths)


def _error_outcome(code, exc, as_json):
    if as_json:
        payload = json.dumps({"error": {"type": type(exc).__name__,
                                        "message": str(exc)}}, indent=2)
    else:
        payload = f"error: {exc}"
    return CommandOutcome(exit_code=code, payload=payload)


def run(argv):
    """Execute one CLI invocation and return its outcome (nothing printed)."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        return CommandOutcome(exit_code=1, payload=str(exc))
    except SystemExit as exc:  # --help prints and exits 0
        return CommandOutcome(exit_code=int(exc.code or 0), payload="")
    if ns.command is None:
        return CommandOutcome(
            exit_code=1,
            payload=parser.format_usage().rstrip()
            + "\nerror: a subcommand is required",
        )
    as_json = _output_format(ns) == "json"
    try:
        doc, lines, jobs = _HANDLERS[ns.command](ns)
        artifacts = ()
        if getattr(ns, "plot", None):
            artifacts = _write_plots(ns.plot, jobs)
    except _UsageError as exc:
        return CommandOutcome(exit_code=1, payload=str(exc))
    except (DataError, FileNotFoundError, IsADirectoryError,
            PermissionError) as exc:
        return _error_outcome(2, exc, as_json)
    except OSError as exc:
        return _error_outcome(2, exc, as_json)
    except ComputationError as exc:
        return _error_outcome(3, exc, as_json)
    if as_json:
        if artifacts:
            doc["plots"] = list(artifacts)
        payload = json.dumps(_jsonable(doc), indent=2)
    else:
        if artifacts:
            lines = list(lines) + [f"wrote {path}" for path in artifacts]
        payload = "\n".join(lines)
    return CommandOutcome(exit_code=0, payload=payload, artifacts=artifacts)


def main(argv=None):
    """Console-script entry point: print the payload, return the exit code."""
    import sys

    outcome = run(sys.argv[1:] if argv is None else argv)
    if outcome.payload:
        print(outcome.payload)
    return outcome.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
