"""
Metrics
Profile, linewidth-scaling and transition-time analyses of result files.
"""

from .analysis import (
    ANALYSES,
    AnalysisError,
    analyze_linewidth_scaling,
    analyze_profile,
    analyze_transition_time,
    format_summary,
    run_analysis,
)

__all__ = [
    "ANALYSES",
    "AnalysisError",
    "analyze_linewidth_scaling",
    "analyze_profile",
    "analyze_transition_time",
    "format_summary",
    "run_analysis",
]
