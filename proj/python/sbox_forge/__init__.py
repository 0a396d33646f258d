"""Key-dependent S-box generation from a trigonometric chaotic map, plus S-box metrics."""

import json

from ._core import (
    GenerationStalled,
    MalformedInput,
    MapMode,
    MapParams,
    RefinementFailed,
    aes_sbox,
    algebraic_degree,
    audit_final,
    bifurcation_scan,
    component_truth_table,
    dap,
    differential_uniformity,
    fixed_points,
    generate,
    generate_initial,
    intermediates,
    is_bijective,
    lap,
    lyapunov,
    nonlinearity,
    paper_final_sbox,
    paper_initial_sbox,
    parse_hex,
    refine,
    report_json,
    step,
    to_hex,
    trajectory,
    walsh_spectrum,
)


def full_report(table):
    """Every metric of a table, as a dict (same layout as `sbox-forge analyze`)."""
    return json.loads(report_json(list(table)))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
