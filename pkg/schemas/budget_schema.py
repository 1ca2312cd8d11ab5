"""Schemas for serializing noise budgets to JSON and CSV.

Both formats carry the same numbers, rounded to 15 significant digits, in
the fixed BUDGET_COLUMNS order. CSV files start with `#` metadata lines.
"""

import csv
import io
import json

from marshmallow import Schema, fields

from utils.constraints import BUDGET_COLUMNS, FLOAT_FORMAT


def format_number(value):
    return format(float(value), FLOAT_FORMAT)


def round_number(value):
    return float(format_number(value))


class NoiseBudgetSchema(Schema):
    """Schema for dumping a NoiseBudget.

    Attributes:
        config_hash (str): sha256 of the configuration text.
        scheme (str): Control scheme of the budget.
        generated_at (str): ISO timestamp.
        columns (list[str]): BUDGET_COLUMNS.
        rows (list[list[float]]): One row per frequency, rounded to 15 significant digits.
    """
    config_hash = fields.String(dump_only = True)
    scheme = fields.String(dump_only = True)
    generated_at = fields.String(dump_only = True)
    columns = fields.Method("get_columns")
    rows = fields.Method("get_rows")

    def get_columns(self, budget):
        return list(BUDGET_COLUMNS)

    def get_rows(self, budget):
        return [[round_number(value) for value in row] for row in budget.rows()]


budget_schema = NoiseBudgetSchema()


def metadata_lines(budget):
    return [
        f"# config_hash: {budget.config_hash}",
        f"# scheme: {budget.scheme}",
        f"# generated_at: {budget.generated_at}",
    ]


def budget_to_csv(budget):
    buffer = io.StringIO()
    buffer.write("\n".join(metadata_lines(budget)) + "\n")
    writer = csv.writer(buffer, lineterminator = "\n")
    writer.writerow(BUDGET_COLUMNS)
    for row in budget.rows():
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def budget_to_json(budget):
    return json.dumps(budget_schema.dump(budget), indent = 2) + "\n"


def render_budget(budget, output_format):
    """Text of the budget in `output_format` ('csv' or 'json')."""
    return budget_to_csv(budget) if output_format == "csv" else budget_to_json(budget)
