"""Regional multi-armed bandit simulation library (python bindings)."""

try:
    from . import _regional as _impl  # installed wheel layout
except ImportError:  # build-tree layout: extension on sys.path
    import _regional as _impl

__all__ = [
    "Group",
    "Interval",
    "RewardFunction",
    "biased_distance",
    "compute_regions",
    "confusing_period",
    "envelope",
    "gaps",
    "make_group",
    "padding",
    "preset_config",
    "preset_names",
    "regret_lower_bound",
    "regret_upper_bound",
    "run_and_write",
    "run_experiment",
    "sw_padding",
    "validate_config",
    "verify_holder",
    "window_rule",
    "worst_case_shape",
]

for _name in __all__:
    globals()[_name] = getattr(_impl, _name)
del _name
