from ._delayctl import (
    ControlSignal,
    DelayKernel,
    EigenRecord,
    Horizon,
    MState,
    SpectrumSet,
    SummationSchedule,
    Trajectory,
    eval_charfn,
    expansion_coefficient,
    find_roots,
    l2_norm,
    least_norm_control,
    m_inner,
    m_norm,
    partial_sum,
    simulate,
    synthesize_control,
    terminal_segment_norm,
    u_for_eigenvector,
    weight_for_eigenvalue,
)

__all__ = [
    "ControlSignal",
    "DelayKernel",
    "EigenRecord",
    "Horizon",
    "MState",
    "SpectrumSet",
    "SummationSchedule",
    "Trajectory",
    "eval_charfn",
    "expansion_coefficient",
    "find_roots",
    "l2_norm",
    "least_norm_control",
    "m_inner",
    "m_norm",
    "partial_sum",
    "simulate",
    "synthesize_control",
    "terminal_segment_norm",
    "u_for_eigenvector",
    "weight_for_eigenvalue",
]
