from collections import defaultdict
from typing import Dict, List, Optional, Sequence

import numpy as np

from nightday.backend.data_layer.models.asymmetry_report import AsymmetryReport, BatchSummary, GroupSummary

UNGROUPED = "ungrouped"


def summarize_groups(reports: Sequence[AsymmetryReport],
                     failures: Optional[Dict[str, str]] = None) -> BatchSummary:
    """
    How many equities show C_nd > C_dn, overall and per grouping label.

    `symbols` keeps the order of `reports` (the panel order); statistics run over symbol order.
    """
    ordered = sorted(reports, key=lambda report: report.symbol)

    by_group: Dict[str, List[AsymmetryReport]] = defaultdict(list)
    for report in ordered:
        by_group[report.group or UNGROUPED].append(report)

    groups = []
    for label in sorted(by_group):
        members = by_group[label]
        ratios = [member.ratio for member in members if member.ratio_defined]
        groups.append(
            GroupSummary(
                group=label,
                count=len(members),
                satisfying=sum(member.satisfies_inequality for member in members),
                mean_delta=float(np.mean([member.delta for member in members])),
                mean_ratio=float(np.mean(ratios)) if ratios else None,
                undefined_ratios=len(members) - len(ratios),
            )
        )

    return BatchSummary(
        total=len(ordered),
        satisfying=sum(report.satisfies_inequality for report in ordered),
        symbols=[report.symbol for report in reports],
        groups=groups,
        failures=dict(sorted((failures or {}).items())),
    )
