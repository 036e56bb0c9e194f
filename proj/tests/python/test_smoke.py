"""End-to-end smoke tests for the python bindings."""

import pytest

import wormnoc


def analyze_all(fs):
    return {
        ("sb", 0): wormnoc.analyze(fs, "sb"),
        ("xlwx", 0): wormnoc.analyze(fs, "xlwx"),
        ("ibn", 2): wormnoc.analyze(fs, "ibn", buf=2),
        ("ibn", 10): wormnoc.analyze(fs, "ibn", buf=10),
    }


def test_version_and_exports():
    assert wormnoc.__version__ == "0.1.0"
    assert wormnoc.example_names() == ["example1", "example2", "example3"]


def test_bundled_bounds_are_reproduced():
    for name in wormnoc.example_names():
        bundle = wormnoc.example_bundle(name)
        reports = analyze_all(bundle.flowset)
        assert bundle.expected, name
        for exp in bundle.expected:
            rep = reports[(exp.analysis, exp.buf)]
            bound = rep.find(exp.flow_id)
            assert bound.converged, (name, exp.flow_id, exp.analysis)
            assert bound.response == exp.response, (
                name,
                exp.flow_id,
                exp.analysis,
                exp.buf,
            )


def test_analysis_report_shape():
    bundle = wormnoc.example_bundle("example1")
    rep = wormnoc.analyze(bundle.flowset, "sb")
    assert rep.analysis == "sb"
    assert rep.buf is None
    assert [b.flow_id for b in rep.flows] == ["t6", "t7", "t8", "t9"]
    assert rep.schedulable is False  # t9 misses its deadline under sb
    ibn = wormnoc.analyze(bundle.flowset, "ibn", buf=10)
    assert ibn.buf == 10
    with pytest.raises(IndexError):
        rep.find("nope")
    with pytest.raises(ValueError):
        wormnoc.analyze(bundle.flowset, "magic")


def test_counterexample_overtakes_optimistic_bound():
    bundle = wormnoc.example_bundle("example1")
    xlwx = wormnoc.analyze(bundle.flowset, "xlwx")
    assert xlwx.find("t9").response == 207
    scenarios = dict(bundle.scenarios)
    sim = wormnoc.simulate(bundle.flowset, scenarios["counterexample"])
    assert sim.complete
    worst = max(r.latency for r in sim.records if r.flow_id == "t9")
    assert worst == 300
    assert worst > 207
    assert worst <= wormnoc.analyze(bundle.flowset, "ibn", buf=2).find("t9").response


def test_simulation_stays_under_buffer_aware_bound():
    bundle = wormnoc.example_bundle("example2")
    fs = bundle.flowset
    fs.topology.buf = 10
    ibn = wormnoc.analyze(fs, "ibn", buf=10)
    pinned = [s for _, s in bundle.scenarios]
    worst = wormnoc.worst_observed(fs, pinned, trials=2000, seed=7)
    assert worst.complete
    for fw in worst.per_flow:
        assert fw.packets > 0
        assert fw.max_latency <= ibn.find(fw.flow_id).response
    # the buffer-aware bound is reachable territory: t5 exceeds its sb bound
    t5 = next(f for f in worst.per_flow if f.flow_id == "t5")
    assert t5.max_latency > 250


def test_generate_is_deterministic_and_valid():
    a = wormnoc.generate(30, seed=9)
    b = wormnoc.generate(30, seed=9)
    assert a.to_json() == b.to_json()
    assert wormnoc.generate(30, seed=10).to_json() != a.to_json()
    assert wormnoc.validate(a) == []
    assert [f.id for f in a.flows] == [f"f{i}" for i in range(1, 31)]
    assert sorted(f.priority for f in a.flows) == list(range(1, 31))
    for f in a.flows:
        assert f.deadline == f.period
        assert f.jitter == 0
        assert f.src != f.dst


def test_validate_reports_violations():
    fs = wormnoc.example_bundle("example1").flowset
    fs.flows[1].priority = fs.flows[0].priority
    fs.flows[2].deadline = fs.flows[2].period + 1
    problems = wormnoc.validate(fs)
    assert len(problems) == 2
    assert any("duplicate priority" in p for p in problems)
    assert any("deadline exceeds period" in p for p in problems)


def test_flowset_json_round_trip(tmp_path):
    fs = wormnoc.generate(8, seed=3)
    path = str(tmp_path / "set.json")
    wormnoc.save_flowset_file(fs, path)
    again = wormnoc.load_flowset_file(path)
    assert again.to_json() == fs.to_json()
    assert wormnoc.FlowSet.from_json(fs.to_json()).to_json() == fs.to_json()


def test_topology_helpers():
    topo = wormnoc.build_mesh(4, 4, 2, 8, 1)
    assert topo.node_count() == 16
    route = wormnoc.xy_route(topo, wormnoc.Coord(0, 0), wormnoc.Coord(3, 2))
    assert len(route) == 7  # injection + 3 east + 2 south + ejection
    assert len(wormnoc.mesh_links(topo)) == 16 * 2 + 2 * (3 * 4) * 2
    flow = wormnoc.example_bundle("example1").flowset.flows[0]
    topo3x1 = wormnoc.build_mesh(3, 1, 2, 8, 1)
    assert wormnoc.no_load_latency(flow, topo3x1) == 14


def test_scenario_round_trip_and_sync():
    bundle = wormnoc.example_bundle("example2")
    scenarios = dict(bundle.scenarios)
    text = scenarios["sync"].to_json()
    again = wormnoc.Scenario.from_json(text)
    assert again.to_json() == text
    sync = wormnoc.synchronous_scenario(bundle.flowset, 2400)
    assert wormnoc.simulate(bundle.flowset, sync).complete


def test_simulation_is_deterministic():
    bundle = wormnoc.example_bundle("example2")
    scenarios = dict(bundle.scenarios)
    first = wormnoc.simulate(bundle.flowset, scenarios["sync"])
    second = wormnoc.simulate(bundle.flowset, scenarios["sync"])
    rows = lambda sim: [
        (r.flow_id, r.release, r.delivery, r.latency) for r in sim.records
    ]
    assert rows(first) == rows(second)
    w1 = wormnoc.worst_observed(bundle.flowset, [], trials=50, seed=4, threads=1)
    w2 = wormnoc.worst_observed(bundle.flowset, [], trials=50, seed=4, threads=3)
    assert [(f.flow_id, f.max_latency, f.packets) for f in w1.per_flow] == [
        (f.flow_id, f.max_latency, f.packets) for f in w2.per_flow
    ]


def test_report_csv():
    bundle = wormnoc.example_bundle("example3")
    csv = wormnoc.report_csv(
        [wormnoc.analyze(bundle.flowset, "sb"),
         wormnoc.analyze(bundle.flowset, "ibn", buf=10)]
    )
    lines = csv.splitlines()
    assert lines[0] == "flow_id,analysis,buf,R,converged,schedulable"
    assert "t5,sb,-,336,true,true" in lines
    assert "t5,ibn,10,396,true,true" in lines
    assert len(lines) == 1 + 2 * 3


def test_run_experiment_small():
    result = wormnoc.run_experiment(
        meshes=[(2, 2)],
        sweep=[2, 4],
        flowsets=6,
        analyses=["sb", "ibn:2"],
        base_seed=11,
    )
    assert result.complete
    assert len(result.cells) == 2 * 2
    for cell in result.cells:
        assert cell.mesh == "2x2"
        assert cell.flowsets == 6
        assert 0 <= cell.schedulable_count <= 6
        assert cell.analysis in ("sb", "ibn b=2")
    again = wormnoc.run_experiment(
        meshes=[(2, 2)],
        sweep=[2, 4],
        flowsets=6,
        analyses=["sb", "ibn:2"],
        base_seed=11,
        threads=2,
    )
    assert again.to_csv() == result.to_csv()
    assert result.to_csv().splitlines()[0] == (
        "mesh,n_flows,analysis,buf,schedulable_pct,flowsets"
    )


def test_write_example_files(tmp_path):
    bundle = wormnoc.example_bundle("example1")
    paths = wormnoc.write_example_files(bundle, str(tmp_path))
    assert len(paths) == 3  # flowset, one scenario, bounds csv
    loaded = wormnoc.load_flowset_file(str(tmp_path / "example1.json"))
    assert loaded.to_json() == bundle.flowset.to_json()
