import pytest

from groupcut.grid_functions import gmic
from groupcut.mip import (
    MipError,
    MipModel,
    SolutionFile,
    TYPE_COVERS,
    build_mip,
    build_mip_2q,
    emit_mip,
    emit_mip_2q,
    function_assignment,
    mip_2q_filename,
    mip_filename,
    parse_lp,
    parse_lp_string,
    refind_function,
)
from groupcut.patterns import pattern_extreme
from groupcut.rationals import Q


def test_model_shape_q5():
    model = build_mip(5, 3, 2, 2, 12)
    assert len(model.vars) == 192
    assert len(model.rows) == 676
    assert model.epsilon == Q(1, 12)
    assert model.objective == ((1, "s_1"), (-1, "s_2"))


def test_row_count_closed_forms():
    for q, f, k in [(5, 3, 2), (7, 2, 3), (8, 5, 2)]:
        model = build_mip(q, f, k, 1, 6)
        # one pair of strictness rows per unordered grid pair
        assert model.count_rows("sub_lo_") == q * (q + 1) // 2
        assert model.count_rows("sub_hi_") == q * (q + 1) // 2
        assert model.count_rows("asg_") == q
        assert model.count_rows("use_") == k
        assert model.count_rows("ord_") == k - 1
        assert model.count_rows("lnk_") == 2 * q * k


def test_variable_naming_and_kinds():
    model = build_mip(5, 3, 2, 2, 12)
    assert model.vars["pi_0"].kind == "continuous"
    assert model.vars["s_1"].kind == "continuous"
    assert model.vars["p_2_3"].kind == "binary"
    assert model.vars["delta_4_1"].kind == "binary"
    # pi_0 is pinned to the origin
    assert model.vars["pi_0"].lo == 0 and model.vars["pi_0"].hi == 0
    # one edge binary per swap orbit: h on x <= y, v strictly below
    assert "h_2_4" in model.vars and "v_2_4" in model.vars
    assert "h_4_2" not in model.vars and "v_4_2" not in model.vars
    assert "h_3_3" in model.vars and "v_3_3" not in model.vars


def test_round_trip_structural_equality():
    model = build_mip(5, 3, 2, 2, 12)
    assert parse_lp_string(model.to_lp_string()) == model
    deeper = build_mip(7, 2, 3, 1, 6, type_cover="fulldim")
    assert parse_lp_string(deeper.to_lp_string()) == deeper


def test_round_trip_through_file(tmp_path):
    path = emit_mip(5, 2, 2, 1, 4, "standard", str(tmp_path))
    assert path.endswith("2slope_q5_f2_m4.lp")
    back = parse_lp(path)
    assert back == build_mip(5, 2, 2, 1, 4)


def test_gmic_satisfies_standard_model():
    model = build_mip(5, 3, 2, 2, 12)
    assignment = function_assignment(model, gmic(5, 3))
    assert model.check_assignment(assignment) == []


def test_corrupted_assignment_is_caught():
    model = build_mip(5, 3, 2, 2, 12)
    assignment = function_assignment(model, gmic(5, 3))
    assignment["pi_1"] = Q(9, 10)
    assert model.check_assignment(assignment) != []
    del assignment["pi_1"]
    with pytest.raises(MipError):
        model.check_assignment(assignment)


def test_six_slope_pattern_satisfies_model():
    fn = pattern_extreme(1, 6)[0]
    model = build_mip(fn.q, fn.f_index, 6, 1, 25)
    assignment = function_assignment(model, fn)
    assert model.check_assignment(assignment) == []


def test_wrong_slope_count_is_rejected():
    model = build_mip(5, 3, 3, 2, 12)  # gmic has 2 slopes, model wants 3
    with pytest.raises(MipError):
        function_assignment(model, gmic(5, 3))


def test_fulldim_isolation_rows():
    model = build_mip(5, 3, 2, 2, 12, type_cover="fulldim")
    assert model.count_rows("iso_") == 8
    plain = build_mip(5, 3, 2, 2, 12)
    assert plain.count_rows("iso_") == 0


def test_fulldim_covers_drops_transfer_machinery():
    model = build_mip(5, 3, 2, 0, 12, type_cover="fulldim_covers")
    assert not any(n.startswith("g_") for n in model.vars)
    assert not any(n.startswith("w_") for n in model.vars)
    cvars = [n for n in model.vars if n.startswith("c_")]
    assert cvars and all(model.vars[n].lo == 0 and model.vars[n].hi == 0
                         for n in cvars)
    # gmic is covered by direct triangles, so it still fits
    assignment = function_assignment(model, gmic(5, 3))
    assert model.check_assignment(assignment) == []


def test_build_validation():
    with pytest.raises(MipError):
        build_mip(1, 1, 2, 0, 4)
    with pytest.raises(MipError):
        build_mip(5, 0, 2, 0, 4)
    with pytest.raises(MipError):
        build_mip(5, 3, 0, 0, 4)
    with pytest.raises(MipError):
        build_mip(5, 3, 2, -1, 4)
    with pytest.raises(MipError):
        build_mip(5, 3, 2, 0, 1)
    with pytest.raises(MipError):
        build_mip(5, 3, 2, 0, 4, type_cover="sideways")


def test_2q_model_structure():
    model = build_mip_2q(37, 25, 11, 4, 2, 4)
    assert len(model.vars) == 8588
    assert len(model.rows) == 34142
    rows = {r[0]: r for r in model.rows if r[0].startswith("edge_")}
    assert rows["edge_10"] == (
        "edge_10", ((1, "pi_10"), (1, "pi_4"), (-1, "pi_14")), "=", 0)
    assert rows["edge_11"] == (
        "edge_11", ((1, "pi_11"), (1, "pi_4"), (-1, "pi_15")), "=", 0)
    # the two prescribed intervals stay uncovered at every step
    for z in (10, 14):
        for i in range(3):
            spec = model.vars["c_%d_%d" % (z, i)]
            assert (spec.lo, spec.hi) == (1, 1)
    # everything else must reach covered by the last step
    spec = model.vars["c_0_2"]
    assert (spec.lo, spec.hi) == (0, 0)


def test_2q_validation():
    with pytest.raises(MipError):
        build_mip_2q(37, 25, 13, 4, 2, 4)  # reflected target collapses
    with pytest.raises(MipError):
        build_mip_2q(37, 25, 0, 4, 2, 4)
    with pytest.raises(MipError):
        build_mip_2q(37, 25, 25, 4, 2, 4)


def test_filenames():
    assert mip_filename(5, 3, 2, 12) == "2slope_q5_f3_m12.lp"
    assert mip_filename(37, 25, 5, 12, "fulldim") == "5slope_q37_f25_fulldim_m12.lp"
    assert mip_filename(25, 8, 6, 12, "fulldim_covers") == \
        "6slope_q25_f8_fulldim_covers_m12.lp"
    assert mip_2q_filename(37, 25, 11, 4, 2, 4) == \
        "mip_q37_f25_a11_4slope_2maxstep_m4.lp"
    assert TYPE_COVERS == ("standard", "fulldim", "fulldim_covers")


def test_emit_2q_canonical_name(tmp_path):
    path = emit_mip_2q(37, 25, 11, 4, 1, 4, str(tmp_path))
    assert path.endswith("mip_q37_f25_a11_4slope_1maxstep_m4.lp")
    assert parse_lp(path) == build_mip_2q(37, 25, 11, 4, 1, 4)


def test_alternative_objectives():
    gaps = build_mip(5, 3, 3, 1, 6, objective="weighted_slope_gaps",
                     objective_weights=(Q(2), Q(1)))
    assert gaps.objective != build_mip(5, 3, 3, 1, 6).objective
    with pytest.raises(MipError):
        build_mip(5, 3, 3, 1, 6, objective="weighted_slope_gaps",
                  objective_weights=(Q(2),))
    with pytest.raises(MipError):
        build_mip(5, 3, 2, 1, 6, objective="nonsense")


def test_parse_rejects_garbage():
    with pytest.raises(MipError):
        parse_lp_string("Maximize\n obj: x\nEnd\n")
    with pytest.raises(MipError):
        parse_lp_string("this is not an lp file")


def test_solution_file(tmp_path):
    path = tmp_path / "sol.txt"
    path.write_text("# solver log\npi_1 0.333333\npi_2 2/3\ns_1 5\np_1_1 0.9999997\n")
    sol = SolutionFile.read(str(path))
    assert "pi_1" in sol and "pi_9" not in sol
    assert sol.value("pi_2") == Q(2, 3)
    assert sol.value("s_1") == 5
    assert sol.binary("p_1_1") == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("pi_1 1 extra\n")
    with pytest.raises(MipError):
        SolutionFile.read(str(bad))


def test_binary_rejects_fractional():
    sol = SolutionFile({"p_0_0": Q(1, 2)})
    with pytest.raises(MipError):
        sol.binary("p_0_0")


def test_refind_function_snaps_decimals(tmp_path):
    fn = gmic(5, 3)
    lines = ["pi_%d %s" % (x, float(fn.values[x])) for x in range(5)]
    path = tmp_path / "sol.txt"
    path.write_text("\n".join(lines) + "\n")
    sol = SolutionFile.read(str(path))
    assert refind_function(sol, 5, 3) == fn


def test_refind_function_exact_values():
    fn = pattern_extreme(1, 6)[0]
    sol = SolutionFile({"pi_%d" % x: fn.values[x] for x in range(fn.q)})
    assert refind_function(sol, fn.q, fn.f_index) == fn


def test_refind_missing_variable():
    sol = SolutionFile({"pi_0": Q(0)})
    with pytest.raises(MipError):
        refind_function(sol, 5, 3)
