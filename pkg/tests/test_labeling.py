import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import flood_fill_partition, label_partition, paper_relabel, rasterized_disk_area
from vesiseg.labeling import AreaTable, label_components, measure_areas
from vesiseg.synthetic import honeycomb, random_binary
from vesiseg.threshold import BinaryImage


def binary(rows):
    """Build a BinaryImage from strings, '#' = black."""
    return BinaryImage(np.array([[0 if c == "#" else 255 for c in r] for r in rows]))


def test_all_white(backend):
    lm = label_components(BinaryImage(np.full((5, 4), 255)), backend=backend)
    assert lm.component_count == 0
    assert not lm.data.any()


def test_single_pixel(backend):
    lm = label_components(binary(["...", ".#.", "..."]), backend=backend)
    assert lm.component_count == 1
    assert lm.data.tolist() == [[0, 0, 0], [0, 1, 0], [0, 0, 0]]


def test_u_shape_merges(backend):
    img = binary(["#.#", "#.#", "###"])
    lm = label_components(img, backend=backend)
    assert lm.component_count == 1
    assert measure_areas(lm).entries == ((1, 7),)
    assert label_partition(lm.data.tolist()) == flood_fill_partition(img.data.tolist())


def test_diagonal_not_connected(backend):
    img = binary(["#.", ".#"])
    lm = label_components(img, backend=backend)
    assert lm.component_count == 2
    assert measure_areas(lm).entries == ((1, 1), (2, 1))
    assert label_partition(lm.data.tolist()) == flood_fill_partition(img.data.tolist())


def test_diagonal_connected_with_8(backend):
    lm = label_components(binary(["#.", ".#"]), connectivity=8, backend=backend)
    assert lm.component_count == 1


def test_labels_follow_first_raster_occurrence(backend):
    # the component reached first in raster order gets label 1 even though
    # the lower-left blob is larger
    img = binary([
        "....#",
        "#...#",
        "#....",
        "###..",
    ])
    lm = label_components(img, backend=backend)
    assert lm.data[0, 4] == 1 and lm.data[1, 0] == 2


def test_staircase_chain_of_merges(backend):
    # every row introduces a new provisional label that merges into the first
    rows = ["#" + "." * 7] + ["." * (i - 1) + "##" + "." * (7 - i) for i in range(1, 8)]
    img = binary(rows)
    lm = label_components(img, backend=backend)
    assert lm.component_count == 1
    assert measure_areas(lm).total_area == img.black_count


def test_comb_many_merges(backend):
    # teeth hanging from the bottom bar produce many provisional labels
    rows = ["#." * 20] * 10 + ["#" * 40]
    lm = label_components(binary(rows), backend=backend)
    assert lm.component_count == 1
    assert set(np.unique(lm.data)) == {0, 1}


def test_checkerboard_all_separate(backend):
    checker = np.indices((9, 11)).sum(axis=0) % 2 * 255
    img = BinaryImage(checker)
    lm = label_components(img, backend=backend)
    assert lm.component_count == img.black_count


def test_unknown_backend():
    with pytest.raises(ValueError):
        label_components(binary(["#"]), backend="gpu")


@pytest.mark.parametrize("conn", [0, 6])
def test_bad_connectivity(backend, conn):
    with pytest.raises(ValueError):
        label_components(binary(["#"]), connectivity=conn, backend=backend)


@pytest.mark.parametrize("shape", [(1, 1), (1, 30), (30, 1), (2, 2), (37, 53)])
@pytest.mark.parametrize("conn", [4, 8])
def test_random_against_flood_fill(backend, rng, shape, conn):
    for _ in range(20):
        img = random_binary(shape, rng.random(), rng)
        lm = label_components(img, conn, backend)
        assert label_partition(lm.data.tolist()) == flood_fill_partition(img.data.tolist(), conn)
        assert sorted(np.unique(lm.data[lm.data > 0])) == list(range(1, lm.component_count + 1))


def test_matches_literal_global_relabel(backend, rng):
    for _ in range(50):
        img = random_binary((20, 20), 0.55, rng)
        expected, n = paper_relabel(img.data.tolist())
        lm = label_components(img, backend=backend)
        assert lm.component_count == n
        assert lm.data.tolist() == expected


def test_backends_agree(rng):
    from vesiseg.labeling import BACKENDS

    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    for conn in (4, 8):
        img = random_binary((120, 90), 0.5, rng)
        maps = [label_components(img, conn, b) for b in BACKENDS]
        assert all(m == maps[0] for m in maps)


def test_measure_areas_empty():
    table = measure_areas(label_components(BinaryImage(np.full((3, 3), 255))))
    assert table == AreaTable(())
    assert table.n_components == 0
    assert table.min_area is None and table.max_area is None and table.mean_area is None


def test_measure_areas_single_component():
    table = measure_areas(label_components(binary(["##.", "#..", "##."])))
    assert table.entries == ((1, 5),)
    assert table.mean_area == 5


def test_honeycomb_areas(backend):
    radius = 15
    expected = rasterized_disk_area(radius)
    img = honeycomb(radius=radius)
    table = measure_areas(label_components(BinaryImage(img.data), backend=backend))
    assert table.n_components == 36
    assert table.areas == [expected] * 36


binary_arrays = arrays(np.uint8, st.tuples(st.integers(1, 16), st.integers(1, 16)),
                       elements=st.sampled_from([0, 255]))


@settings(max_examples=80, deadline=None)
@given(binary_arrays)
def test_property_partition_and_conservation(data):
    img = BinaryImage(data)
    lm = label_components(img)
    assert label_partition(lm.data.tolist()) == flood_fill_partition(data.tolist())
    table = measure_areas(lm)
    assert table.total_area == img.black_count
    assert all(a >= 1 for a in table.areas)
    assert ((lm.data == 0) == (data == 255)).all()


@settings(max_examples=80, deadline=None)
@given(binary_arrays)
def test_property_no_adjacent_distinct_labels(data):
    lab = label_components(BinaryImage(data)).data
    horiz = (lab[:, 1:] > 0) & (lab[:, :-1] > 0) & (lab[:, 1:] != lab[:, :-1])
    vert = (lab[1:] > 0) & (lab[:-1] > 0) & (lab[1:] != lab[:-1])
    assert not horiz.any() and not vert.any()


def _signature(data):
    lm = label_components(BinaryImage(data))
    return lm.component_count, sorted(measure_areas(lm).areas)


@settings(max_examples=80, deadline=None)
@given(binary_arrays)
def test_property_geometry_equivariance(data):
    sig = _signature(data)
    assert _signature(np.ascontiguousarray(data.T)) == sig
    assert _signature(np.ascontiguousarray(data[:, ::-1])) == sig
    assert _signature(np.ascontiguousarray(data[::-1])) == sig
    lab_t = label_components(BinaryImage(np.ascontiguousarray(data.T))).data
    lab = label_components(BinaryImage(data)).data
    assert label_partition(lab_t.T.tolist()) == label_partition(lab.tolist())


@settings(max_examples=80, deadline=None)
@given(binary_arrays)
def test_property_count_bound(data):
    img = BinaryImage(data)
    n = label_components(img).component_count
    black = data == 0
    isolated = not ((black[:, 1:] & black[:, :-1]).any() or (black[1:] & black[:-1]).any())
    assert n <= img.black_count
    assert (n == img.black_count) == isolated


@settings(max_examples=30, deadline=None)
@given(binary_arrays)
def test_property_deterministic(data):
    img = BinaryImage(data)
    assert label_components(img) == label_components(img)
