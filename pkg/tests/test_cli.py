import json

from groupmm.cli import main

from _support import (
    D12_ALIASING_INSTANCE,
    D12_ALIASING_SUBSETS,
    D12_EXPECTED_ALIASING,
    D12_TPP_SUBSETS,
    K3_GRAPH,
)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tpp_check_affirmative(capsys):
    code, out, _ = run(capsys, "tpp-check", D12_TPP_SUBSETS)
    assert code == 0
    assert "TPP: yes" in out


def test_tpp_check_negative_counts_triples(capsys):
    code, out, _ = run(capsys, "tpp-check", D12_ALIASING_SUBSETS)
    assert code == 1
    assert "TPP: no" in out and "4 aliasing triples" in out


def test_tpp_check_json(capsys):
    code, out, _ = run(capsys, "tpp-check", D12_ALIASING_SUBSETS, "--json")
    assert code == 1
    payload = json.loads(out)
    assert payload == {"tpp": False, "aliasing_count": 4, "dims": [2, 4, 2]}


def test_tpp_check_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "tpp-check", bad)
    assert code == 2
    assert "error" in err


def test_tpp_check_missing_file(capsys):
    code, _, err = run(capsys, "tpp-check", "/nonexistent/subsets.json")
    assert code == 2


def test_aliasing_lists_the_four_triples(capsys):
    code, out, _ = run(capsys, "aliasing", D12_ALIASING_SUBSETS, "--json")
    assert code == 0
    payload = json.loads(out)
    got = {tuple(tuple(part) for part in triple) for triple in payload["triples"]}
    assert got == D12_EXPECTED_ALIASING
    assert payload["dims"] == [2, 4, 2]


def test_aliasing_budget_exhaustion_exit_code(capsys):
    code, _, err = run(capsys, "aliasing", D12_ALIASING_SUBSETS, "--budget-pairs", 8)
    assert code == 3
    assert "closed-form" in err


def test_cover_exact(capsys):
    code, out, _ = run(capsys, "cover", D12_ALIASING_INSTANCE, "--exact", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["f"] == 12
    assert payload["exact"] is True


def test_cover_heuristic(capsys):
    code, out, _ = run(capsys, "cover", D12_ALIASING_INSTANCE, "--heuristic", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["f"] == 12
    assert len(payload["I"]) + len(payload["J"]) == 2
    assert payload["exact"] is False


def test_cover_accepts_aliasing_set_json(tmp_path, capsys):
    code, out, _ = run(capsys, "aliasing", D12_ALIASING_SUBSETS, "--json")
    aliasing_file = tmp_path / "aliasing.json"
    aliasing_file.write_text(out)
    code, out, _ = run(capsys, "cover", aliasing_file, "--json")
    assert code == 0
    assert json.loads(out)["f"] == 12


def test_cover_node_limit_signals_budget_exit(capsys):
    code, out, _ = run(capsys, "cover", D12_ALIASING_INSTANCE, "--node-limit", 2, "--json")
    assert code == 3
    assert json.loads(out)["exact"] is False


def test_omega_bound_family_original(capsys):
    code, out, _ = run(
        capsys, "omega-bound", "--family", "wreath_s2", "--n", 17,
        "--construction", "original",
    )
    assert code == 0
    value = float(out.split("omega <=")[1].split()[0])
    assert abs(value - 2.9088) <= 5e-4


def test_omega_bound_family_relaxed(capsys):
    code, out, _ = run(
        capsys, "omega-bound", "--family", "wreath_s2", "--n", 17,
        "--construction", "relaxed", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["omega"] - 2.9084) <= 5e-4
    assert payload["vacuous"] is False


def test_omega_bound_spectrum_file(tmp_path, capsys):
    spectrum = tmp_path / "spectrum.json"
    spectrum.write_text(json.dumps({"order": 8, "degrees": [[1, 8]]}))
    code, out, _ = run(capsys, "omega-bound", "--spectrum", spectrum, "--f", 8)
    assert code == 0
    assert "omega <= 3.000000" in out
    assert "vacuous" in out


def test_omega_bound_flag_validation(capsys):
    code, _, err = run(capsys, "omega-bound", "--f", 8)
    assert code == 2
    code, _, err = run(
        capsys, "omega-bound", "--family", "wreath_s2", "--n", 3,
        "--f", 10, "--construction", "original",
    )
    assert code == 2


def test_omega_bound_solver_refusal_propagates(tmp_path, capsys):
    spectrum = tmp_path / "spectrum.json"
    spectrum.write_text(json.dumps({"order": 4, "degrees": [[2, 1]]}))
    code, _, err = run(capsys, "omega-bound", "--spectrum", spectrum, "--f", 4)
    assert code == 2
    assert "not increasing" in err


def test_multiply_demo_tpp_sets_have_zero_delta(capsys):
    code, out, _ = run(capsys, "multiply-demo", D12_TPP_SUBSETS, "--seed", 1)
    assert code == 0
    assert "delta is zero" in out


def test_multiply_demo_aliasing_sets_show_delta(capsys):
    code, out, _ = run(capsys, "multiply-demo", D12_ALIASING_SUBSETS, "--seed", 1, "--json")
    assert code == 0
    payload = json.loads(out)
    delta = payload["delta"]["data"]
    assert any(x != 0 for row in delta for x in row)
    # corrections only ever land in the product aliasing entries
    positions = {(i + 1, k + 1) for i, row in enumerate(delta) for k, x in enumerate(row) if x}
    assert positions <= {(1, 1), (1, 2), (2, 1), (2, 2)}


def test_multiply_demo_is_seed_deterministic(capsys):
    _, out1, _ = run(capsys, "multiply-demo", D12_ALIASING_SUBSETS, "--seed", 5, "--json")
    _, out2, _ = run(capsys, "multiply-demo", D12_ALIASING_SUBSETS, "--seed", 5, "--json")
    assert out1 == out2


def test_reduce_independent_set_k3(capsys):
    code, out, _ = run(capsys, "reduce-independent-set", K3_GRAPH)
    assert code == 0
    payload = json.loads(out)
    assert payload["m"] == 1 and payload["n"] == 3 and payload["p"] == 1
    assert len(payload["pairs"]) == 6


def test_reduction_feeds_cover(tmp_path, capsys):
    _, out, _ = run(capsys, "reduce-independent-set", K3_GRAPH)
    inst = tmp_path / "inst.json"
    inst.write_text(out)
    code, out, _ = run(capsys, "cover", inst, "--exact", "--json")
    assert code == 0
    assert json.loads(out)["f"] == 1


def test_construct_emits_consumable_subsets(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "wreath", "--n", 2, "--relaxed")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["S"]) == len(payload["T"]) == len(payload["U"]) == 5
    subsets = tmp_path / "subsets.json"
    subsets.write_text(out)
    code, out, _ = run(capsys, "tpp-check", subsets)
    assert code == 1  # the relaxed sets alias


def test_construct_original_passes_tpp(tmp_path, capsys):
    _, out, _ = run(capsys, "construct", "wreath", "--n", 2)
    subsets = tmp_path / "subsets.json"
    subsets.write_text(out)
    code, out, _ = run(capsys, "tpp-check", subsets)
    assert code == 0


def test_construct_bounds_for_large_n(capsys):
    code, out, _ = run(capsys, "construct", "wreath", "--n", 17, "--bounds", "--json")
    assert code == 0
    payload = json.loads(out)
    by_variant = {e["variant"]: e for e in payload["bounds"]}
    assert by_variant["original"]["f"] == 160_989_184
    assert by_variant["relaxed"]["f"] == 161_442_336
    assert by_variant["original"]["f_kind"] == "closed-form (not enumerated)"
    assert abs(by_variant["original"]["omega"] - 2.9088) <= 5e-4
    assert abs(by_variant["relaxed"]["omega"] - 2.9084) <= 5e-4


def test_reproduce_table(capsys):
    import time

    start = time.perf_counter()
    code, out, _ = run(capsys, "reproduce", "--json")
    assert time.perf_counter() - start < 60.0
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 6
    indexed = {(r["n"], r["variant"]): r for r in rows}
    assert indexed[(2, "original")]["f_exact"] == 64
    assert indexed[(2, "relaxed")]["f_closed_form"] == 96
    assert indexed[(17, "original")]["f_exact"] is None
    assert abs(indexed[(17, "original")]["omega"] - 2.9088) <= 5e-4
    assert abs(indexed[(17, "relaxed")]["omega"] - 2.9084) <= 5e-4
    assert indexed[(17, "relaxed")]["omega"] < indexed[(17, "original")]["omega"]


def test_reproduce_human_table(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0
    omegas = []
    for line in out.splitlines():
        if line.strip().startswith("17"):
            omegas.append(float(line.split()[-1].rstrip("*")))
    assert len(omegas) == 2
    assert abs(omegas[0] - 2.9088) <= 5e-4
    assert abs(omegas[1] - 2.9084) <= 5e-4
    assert omegas[1] < omegas[0]
