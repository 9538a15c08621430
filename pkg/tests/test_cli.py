import json

import pytest

from network_spectra.cli import main
from network_spectra.fixtures import FIXTURE_NAMES, build, fixture_path


def run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_validate_fixtures(tmp_path, name):
    assert run(tmp_path, "validate", name) == 0
    data = json.loads((tmp_path / f"validate_{name}.json").read_text())
    assert data["validate"]["ok"]


def test_charpoly_sq1(tmp_path):
    assert run(tmp_path, "charpoly", "sq1") == 0
    data = json.loads((tmp_path / "charpoly_sq1.json").read_text())
    assert data["charpoly"] == [
        [-1, 0, "-1"],
        [0, -1, "-1"],
        [0, 0, "4"],
        [0, 1, "-1"],
        [1, 0, "-1"],
    ]
    assert data["node"]["is_node"]
    assert data["sigma_symmetric"]


def test_zigzag_and_newton(tmp_path):
    assert run(tmp_path, "zigzag", "tri2") == 0
    assert run(tmp_path, "newton", "tri2") == 0
    data = json.loads((tmp_path / "newton_tri2.json").read_text())
    assert data["all_equal"]
    assert data["interior_lattice_points"] == 3
    assert data["genus"] == 2
    assert data["centrally_symmetric"]


def test_ocrsf_check(tmp_path):
    assert run(tmp_path, "ocrsf-check", "hex1", "--draws", "5") == 0
    data = json.loads((tmp_path / "ocrsf_check_hex1.json").read_text())
    assert data["oracle_equality"] and data["random_draws_equal"] and data["binomial_match"]


def test_temperley_check(tmp_path):
    assert run(tmp_path, "temperley-check", "sq2") == 0
    data = json.loads((tmp_path / "temperley_check_sq2.json").read_text())
    assert data["bijection"] and data["weight_preserving"] and data["homology_preserving"]


def test_ydelta_move(tmp_path):
    assert run(tmp_path, "ydelta", "hex1", "--y2d", "0") == 0
    data = json.loads((tmp_path / "ydelta_hex1.json").read_text())
    assert data["exact_identity"] and data["polygon_equal"]
    assert data["factor"] == "3"


def test_evolve_program(tmp_path):
    prog = str(fixture_path("tri2_cube_program"))
    assert (
        run(
            tmp_path,
            "evolve",
            "tri2",
            "--program",
            prog,
            "--steps",
            "4",
            "--random-conductances",
            "--seed",
            "9",
        )
        == 0
    )
    data = json.loads((tmp_path / "evolve_tri2.json").read_text())
    assert data["conserved_constant"]
    assert len(data["steps"]) == 5


def test_amoeba_outputs(tmp_path):
    assert run(tmp_path, "amoeba", "sq1", "--grid", "24") == 0
    data = json.loads((tmp_path / "amoeba_sq1.json").read_text())
    assert (tmp_path / "amoeba_sq1.csv").exists()
    assert (tmp_path / "amoeba_sq1.svg").exists()
    assert data["holes"] == 0


def test_divisor_tri2(tmp_path):
    assert run(tmp_path, "divisor", "tri2") == 0
    data = json.loads((tmp_path / "divisor_tri2.json").read_text())
    assert data["count_matches_genus"]
    assert data["genus"] == 2
    assert data["q_check"] and data["section_check"]


def test_abel(tmp_path):
    assert run(tmp_path, "abel", "hex1", "--window", "1") == 0
    data = json.loads((tmp_path / "abel_hex1.json").read_text())
    assert all(data["equivariance"].values())


def test_reports_byte_stable(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        assert main(["ocrsf-check", "hex1", "--out", str(out), "--seed", "5"]) == 0
    assert (a / "ocrsf_check_hex1.json").read_bytes() == (b / "ocrsf_check_hex1.json").read_bytes()


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command", "x"])
    assert exc.value.code == 2


def test_io_error_exit_3(tmp_path):
    assert run(tmp_path, "validate", "/no/such/file.json") == 3


def test_check_failure_exit_1(tmp_path):
    # a non-minimal network: subdivided sq1 (written to disk first)
    from network_spectra.graph_core import Edge, TorusGraph

    g = TorusGraph(
        2,
        [Edge(0, 0, 1, (1, 0)), Edge(1, 1, 0, (0, 0)), Edge(2, 0, 0, (0, 1))],
        {0: (0, 4, 3, 5), 1: (2, 1)},
    )
    path = tmp_path / "subdivided.json"
    g.save(path)
    assert run(tmp_path, "zigzag", str(path)) == 1


def test_file_input_equivalent_to_fixture(tmp_path):
    g, c = build("hex1")
    path = tmp_path / "hexcopy.json"
    g.save(path, conductances=c)
    assert run(tmp_path, "charpoly", str(path)) == 0
    a = json.loads((tmp_path / "charpoly_hexcopy.json").read_text())
    assert run(tmp_path, "charpoly", "hex1") == 0
    b = json.loads((tmp_path / "charpoly_hex1.json").read_text())
    assert a == b
