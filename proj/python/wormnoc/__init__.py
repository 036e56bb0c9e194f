"""Schedulability toolkit for hard real-time priority-preemptive wormhole NoCs."""

from ._core import (
    AnalysisReport,
    Coord,
    ExampleBundle,
    ExpectedBound,
    ExperimentCell,
    ExperimentResult,
    Flow,
    FlowBound,
    FlowSet,
    FlowWorst,
    InterferenceGraph,
    LatencyRecord,
    Link,
    LinkKind,
    Scenario,
    SimResult,
    Topology,
    WorstCaseResult,
    __version__,
    analyze,
    build_mesh,
    example_bundle,
    example_names,
    generate,
    load_flowset_file,
    load_scenario_file,
    mesh_links,
    no_load_latency,
    report_csv,
    run_experiment,
    save_flowset_file,
    simulate,
    synchronous_scenario,
    validate,
    worst_observed,
    write_example_files,
    xy_route,
)

__all__ = [
    "AnalysisReport",
    "Coord",
    "ExampleBundle",
    "ExpectedBound",
    "ExperimentCell",
    "ExperimentResult",
    "Flow",
    "FlowBound",
    "FlowSet",
    "FlowWorst",
    "InterferenceGraph",
    "LatencyRecord",
    "Link",
    "LinkKind",
    "Scenario",
    "SimResult",
    "Topology",
    "WorstCaseResult",
    "__version__",
    "analyze",
    "build_mesh",
    "example_bundle",
    "example_names",
    "generate",
    "load_flowset_file",
    "load_scenario_file",
    "mesh_links",
    "no_load_latency",
    "report_csv",
    "run_experiment",
    "save_flowset_file",
    "simulate",
    "synchronous_scenario",
    "validate",
    "worst_observed",
    "write_example_files",
    "xy_route",
]
