"""Schemas for serializing layer optimizations and reflectivity sweeps."""

import csv
import io
import json
import math

from marshmallow import Schema, fields

from schemas.budget_schema import format_number, round_number


def _rounded(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    return round_number(value)


class LayerCandidateSchema(Schema):
    n_ietm = fields.Integer()
    r_ietm = fields.Function(lambda candidate: _rounded(candidate.r_ietm))
    n_eetm = fields.Integer(allow_none = True)
    total_asd = fields.Function(lambda candidate: _rounded(candidate.total_asd))
    feasible = fields.Boolean()


class OptimizationResultSchema(Schema):
    """Schema for dumping an OptimizationResult.

    `breakdown` is the optimum's budget at the evaluation frequency as a
    column -> value mapping; infeasible candidates keep null totals.
    """
    scheme = fields.String()
    frequency = fields.Float()
    loss_budget = fields.Float()
    best_n_ietm = fields.Integer()
    best_n_eetm = fields.Integer()
    total_asd_at_f = fields.Function(lambda result: _rounded(result.total_asd_at_f))
    breakdown = fields.Method("get_breakdown")
    infeasible_layers = fields.List(fields.Integer())
    candidates = fields.List(fields.Nested(LayerCandidateSchema))

    def get_breakdown(self, result):
        return {name: round_number(value) for name, value in result.breakdown.at(0).items()}


class SweepPointSchema(Schema):
    r_ietm = fields.Function(lambda point: _rounded(point.r_ietm))
    n_eetm = fields.Integer(allow_none = True)
    total_asd = fields.Function(lambda point: _rounded(point.total_asd))
    feasible = fields.Boolean()


class SweepTableSchema(Schema):
    """Schema for dumping a SweepTable; curves are keyed by the loss budget as text."""
    scheme = fields.String()
    frequency = fields.Float()
    grid = fields.List(fields.Float())
    curves = fields.Method("get_curves")

    def get_curves(self, table):
        return {f"{budget:g}": point_schema.dump(points, many = True) for budget, points in table.curves.items()}


optimization_schema = OptimizationResultSchema()
point_schema = SweepPointSchema()
sweep_schema = SweepTableSchema()

SWEEP_COLUMNS = ("loss_budget", "r_ietm", "n_eetm", "total_asd", "feasible")


def optimization_to_json(result):
    return json.dumps(optimization_schema.dump(result), indent = 2) + "\n"


def sweep_to_csv(table):
    """Long-format sweep table: one row per (budget, r_IETM); infeasible totals are 'nan'."""
    buffer = io.StringIO()
    buffer.write(f"# scheme: {table.scheme}\n# frequency: {format_number(table.frequency)}\n")
    writer = csv.writer(buffer, lineterminator = "\n")
    writer.writerow(SWEEP_COLUMNS)
    for budget, points in table.curves.items():
        for point in points:
            writer.writerow([
                format_number(budget),
                format_number(point.r_ietm),
                "" if point.n_eetm is None else point.n_eetm,
                format_number(point.total_asd) if point.feasible else "nan",
                str(point.feasible).lower(),
            ])
    return buffer.getvalue()


def render_sweep(table, output_format):
    if output_format == "csv":
        return sweep_to_csv(table)
    return json.dumps(sweep_schema.dump(table), indent = 2) + "\n"
