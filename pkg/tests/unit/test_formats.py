"""Unit tests for tdcsp.formats"""

import pytest

from tdcsp.core import BinCspInstance, ListColoringInstance, PrecoloringInstance
from tdcsp.errors import FormatError
from tdcsp.formats import (
    format_bcsp,
    format_bits,
    format_circ,
    format_fat_tree,
    format_fo,
    format_forest,
    format_graph,
    format_lcol,
    format_ordered_tree,
    format_pcol,
    format_set,
    format_struct,
    format_wsat,
    parse_bcsp,
    parse_bits,
    parse_circ,
    parse_fat_tree,
    parse_fo,
    parse_forest,
    parse_graph,
    parse_lcol,
    parse_ordered_tree,
    parse_pcol,
    parse_set,
    parse_struct,
    parse_wsat,
    read_file,
    write_file,
)
from tdcsp.formulas import CircuitBuilder, NormalizedFormula, WeightedSatInstance, conj, disj, neg, pos
from tdcsp.logic import Atom, Equals, GuidedSentence, Not, PrenexSentence
from tdcsp.machine import TreedepthCspMachine, compile_bincsp_td
from tdcsp.structure import Graph, tree_edge_labeling, treedepth_exact
from tdcsp.unitrees import build_universal_tree

TRIANGLE_BCSP = """
# two colors on a triangle
bincsp 3
var 0 0 1
var 1 0 1
var 2 0 1
edge 0 1
allow 0 1 0 1
allow 0 1 1 0
edge 1 2
allow 2 1 0 1
allow 2 1 1 0
edge 0 2
"""


class TestBinCspFormat:
    """Test the .bcsp format"""

    def test_parse(self):
        inst = parse_bcsp(TRIANGLE_BCSP)
        assert inst.n == 3
        assert inst.constraints[(0, 1)] == frozenset({(0, 1), (1, 0)})
        # reversed allow lines are stored canonically
        assert inst.constraints[(1, 2)] == frozenset({(1, 0), (0, 1)})
        # an edge without allow lines forbids everything
        assert inst.constraints[(0, 2)] == frozenset()

    def test_roundtrip(self):
        inst = parse_bcsp(TRIANGLE_BCSP)
        assert parse_bcsp(format_bcsp(inst)) == inst

    def test_non_integer_values_are_renumbered(self):
        inst = BinCspInstance.build([("a", "b"), ("b",)], {(0, 1): {("a", "b")}})
        text = format_bcsp(inst)
        assert "# var 0:" in text
        back = parse_bcsp(text)
        assert back.domains == ((0, 1), (0,))
        assert back.constraints[(0, 1)] == frozenset({(0, 0)})

    def test_line_numbers_in_errors(self):
        text = "bincsp 2\nvar 0 0\nvar 1 0\nedge 0 5\n"
        with pytest.raises(FormatError, match=r"^inst.bcsp:4:") as info:
            parse_bcsp(text, source="inst.bcsp")
        assert info.value.line == 4

    def test_missing_var(self):
        with pytest.raises(FormatError, match="No 'var' line"):
            parse_bcsp("bincsp 2\nvar 0 0\n")

    def test_allow_on_undeclared_edge(self):
        with pytest.raises(FormatError, match="undeclared edge"):
            parse_bcsp("bincsp 2\nvar 0 0\nvar 1 0\nallow 0 1 0 0\n")

    def test_allow_outside_domain(self):
        with pytest.raises(FormatError, match="leaves the domains"):
            parse_bcsp("bincsp 2\nvar 0 0\nvar 1 0\nedge 0 1\nallow 0 1 0 3\n")

    def test_wrong_header(self):
        with pytest.raises(FormatError, match="header"):
            parse_bcsp("graph 2\n")

    def test_not_an_integer(self):
        with pytest.raises(FormatError, match="integer"):
            parse_bcsp("bincsp two\n")

    def test_unknown_directive(self):
        with pytest.raises(FormatError, match="Unknown directive"):
            parse_bcsp("bincsp 1\nvar 0 0\nvertex 0\n")


class TestColoringFormats:
    """Test the .lcol and .pcol formats"""

    def test_lcol_default_lists(self):
        lc = parse_lcol("listcol 3 2\nlist 0 1\nedge 0 1\nedge 1 2\n")
        assert lc.lists == {0: (1,), 1: (0, 1), 2: (0, 1)}
        assert lc.colors == (0, 1)

    def test_lcol_roundtrip(self, path_listcoloring):
        back = parse_lcol(format_lcol(path_listcoloring))
        assert back.lists == path_listcoloring.lists
        assert back.graph == path_listcoloring.graph

    def test_pcol_roundtrip(self, star_precoloring):
        back = parse_pcol(format_pcol(star_precoloring))
        assert back.precolored == star_precoloring.precolored
        assert back.graph == star_precoloring.graph

    def test_pcol_header_keyword(self):
        with pytest.raises(FormatError, match="precol"):
            parse_pcol("listcol 2 2\n")

    def test_pcol_rejects_list_lines(self):
        with pytest.raises(FormatError, match="Unknown directive"):
            parse_pcol("precol 2 2\nlist 0 1\n")

    def test_precolored_twice(self):
        with pytest.raises(FormatError, match="twice"):
            parse_pcol("precol 2 2\npre 0 0\npre 0 1\n")

    def test_self_loop(self):
        with pytest.raises(FormatError, match="Self-loop"):
            parse_lcol("listcol 2 2\nedge 1 1\n")

    def test_sparse_vertex_ids_are_renumbered(self):
        # an induced subgraph keeps the ids of its host graph
        G = Graph((1, 3, 7), ((1, 3), (3, 7)))
        lc = ListColoringInstance(G, (0, 1), {1: (0,), 3: (0, 1), 7: (1,)})
        text = format_lcol(lc)
        assert "# vertex 2 = 7" in text
        back = parse_lcol(text)
        assert back.graph == Graph.from_edges(3, [(0, 1), (1, 2)])
        assert back.lists == {0: (0,), 1: (0, 1), 2: (1,)}

    def test_sparse_precoloring_is_renumbered(self):
        G = Graph((2, 5), ((2, 5),))
        pc = PrecoloringInstance(G, (0, 1, 2), {5: 2})
        back = parse_pcol(format_pcol(pc))
        assert back.graph == Graph.from_edges(2, [(0, 1)])
        assert back.precolored == {1: 2}


class TestWitnessFormats:
    """Test .graph, .set and .tree"""

    def test_graph_roundtrip(self, path5):
        assert parse_graph(format_graph(path5)) == path5

    def test_bad_edge(self):
        with pytest.raises(FormatError, match=":2:"):
            parse_graph("graph 2\nedge 0 2\n", source="g.graph")

    def test_set(self):
        assert parse_set("set 3 1\n") == frozenset({1, 3})
        assert parse_set(format_set({2, 0})) == frozenset({0, 2})
        assert parse_set("set\n") == frozenset()

    def test_set_errors(self):
        with pytest.raises(FormatError):
            parse_set("set 1 1\n")
        with pytest.raises(FormatError):
            parse_set("set 1\nset 2\n")

    def test_forest_roundtrip(self):
        text = "tree 3\nnode 4 parent -\nnode 7 parent 4\nnode 2 parent -\n"
        F = parse_forest(text)
        assert F.roots == (2, 4)
        assert F.parent == {7: 4}
        assert parse_forest(format_forest(F)) == F

    def test_forest_node_count(self):
        with pytest.raises(FormatError, match="announces 2"):
            parse_forest("tree 2\nnode 0 parent -\n")

    def test_forest_unknown_parent(self):
        with pytest.raises(FormatError, match="unknown parent"):
            parse_forest("tree 1\nnode 0 parent 3\n")

    def test_forest_cycle(self):
        with pytest.raises(FormatError, match="cycle"):
            parse_forest("tree 2\nnode 0 parent 1\nnode 1 parent 0\n")

    def test_fat_tree(self):
        text = "tree 2\nnode 0 parent -\nnode 1 parent 0\nbag 1 3 4\n"
        W = parse_fat_tree(text)
        assert W.bags == ((), (3, 4))
        assert W.width == 2
        assert parse_fat_tree(format_fat_tree(W)) == W

    def test_fat_tree_numbering(self):
        with pytest.raises(FormatError, match="0..n-1"):
            parse_fat_tree("tree 1\nnode 3 parent -\n")

    def test_ordered_tree_keeps_child_order(self):
        text = "tree 3\nnode 0 parent -\nnode 2 parent 0\nnode 1 parent 0\n"
        T, labeling = parse_ordered_tree(text)
        assert T.children[0] == (2, 1)
        assert labeling is None

    def test_ordered_tree_with_labels_and_annotations(self):
        U = build_universal_tree(3, 2)
        labeling = tree_edge_labeling(U)
        T, back = parse_ordered_tree(format_ordered_tree(U, labeling))
        assert T == U
        assert back == labeling

    def test_partial_labels_rejected(self):
        text = "tree 3\nnode 0 parent -\nnode 1 parent 0\nnode 2 parent 0\nlabel 0 1 0\n"
        with pytest.raises(FormatError, match="cover exactly"):
            parse_ordered_tree(text)

    def test_label_must_be_bits(self):
        with pytest.raises(FormatError, match="bit string"):
            parse_ordered_tree("tree 2\nnode 0 parent -\nnode 1 parent 0\nlabel 0 1 2\n")


class TestFormulaFormats:
    """Test .wsat and .circ"""

    def test_wsat_roundtrip(self):
        w = WeightedSatInstance(NormalizedFormula(conj(disj(neg(0), pos(2)), disj(neg(1))), 3), 2)
        assert parse_wsat(format_wsat(w)) == w

    def test_wsat_comments(self):
        w = parse_wsat("; one clause\n(wsat :k 1 :n 2\n  (and (or (not 0) 1)))\n")
        assert w.k == 1
        assert w.n == 2

    def test_wsat_missing_option(self):
        with pytest.raises(FormatError, match="wsat :k"):
            parse_wsat("(wsat :k 1 (and))")

    def test_wsat_root_must_be_and(self):
        with pytest.raises(FormatError, match="'and'"):
            parse_wsat("(wsat :k 1 :n 1 (or 0))")

    def test_wsat_unbalanced(self):
        with pytest.raises(FormatError, match=r"Unbalanced '\('"):
            parse_wsat("(wsat :k 1 :n 1 (and)")

    def test_wsat_trailing_content(self):
        with pytest.raises(FormatError, match="Trailing"):
            parse_wsat("(wsat :k 0 :n 0 (and)) (and)")

    def test_circ_roundtrip(self):
        b = CircuitBuilder(2)
        C = b.build(b.or_([b.not_(b.input(0)), b.input(1)]))
        assert parse_circ(format_circ(C)) == C

    def test_circ_without_header(self):
        C = parse_circ("g0 = IN x2\ng1 = NOT g0\nout g1\n")
        assert C.n == 3

    def test_circ_gate_order(self):
        with pytest.raises(FormatError, match="Expected gate g1"):
            parse_circ("g0 = IN x0\ng2 = NOT g0\nout g2\n")

    def test_circ_missing_out(self):
        with pytest.raises(FormatError, match="out"):
            parse_circ("g0 = IN x0\n")

    def test_circ_unknown_kind(self):
        with pytest.raises(FormatError, match="XOR"):
            parse_circ("g0 = IN x0\ng1 = XOR g0 g0\nout g1\n")


class TestLogicFormats:
    """Test .struct and .fo"""

    def test_struct_roundtrip(self):
        text = "universe 3\nrel E 2\ntup E 0 1\ntup E 1 2\nrel R 1\ntup R 2\n"
        A = parse_struct(text)
        assert A.holds("E", 1, 2)
        assert A.members("R") == (2,)
        assert parse_struct(format_struct(A)) == A

    def test_struct_undeclared_relation(self):
        with pytest.raises(FormatError, match="declared relation"):
            parse_struct("universe 1\ntup R 0\n")

    def test_struct_tuple_out_of_range(self):
        with pytest.raises(FormatError, match=":3:"):
            parse_struct("universe 1\nrel R 1\ntup R 1\n", source="a.struct")

    def test_struct_keyword_relation(self):
        with pytest.raises(FormatError, match="Bad relation"):
            parse_struct("universe 1\nrel and 1\n")

    def test_prenex_blocks_merge(self):
        s = parse_fo("(exists (x) (exists (y) (forall (z) (or (= x z) (E y z)))))")
        assert s.blocks == (("E", ("x", "y")), ("A", ("z",)))

    def test_prenex_roundtrip(self):
        s = PrenexSentence(
            (("A", ("x",)), ("E", ("y",))), Not(Equals("x", "y"))
        )
        assert parse_fo(format_fo(s)) == s

    def test_guided_roundtrip(self):
        s = GuidedSentence(2, Atom("parent", ("x1", "y2")))
        assert parse_fo(format_fo(s)) == s

    def test_unbound_variable(self):
        with pytest.raises(FormatError, match="unbound"):
            parse_fo("(exists (x) (= x y))")

    def test_quantifier_inside_matrix(self):
        with pytest.raises(FormatError, match="inside a matrix"):
            parse_fo("(exists (x) (and (exists (y) (= x y))))")


class TestProgramFormat:
    """Test the .bits format"""

    def test_compiled_input_roundtrip(self, triangle_2col):
        _, forest = treedepth_exact(triangle_2col.graph)
        _, bits = compile_bincsp_td(triangle_2col, forest)
        text = format_bits(bits)
        assert text.startswith(f"bits {len(bits)}\n")
        assert all(len(line) <= 64 for line in text.splitlines()[1:])
        machine, back = parse_bits(text)
        assert isinstance(machine, TreedepthCspMachine)
        assert back == bits

    def test_length_mismatch(self):
        with pytest.raises(FormatError, match="declares 5 bits"):
            parse_bits("bits 5\n1101\n")

    def test_payload_must_be_binary(self):
        with pytest.raises(FormatError, match="run of 0 and 1") as info:
            parse_bits("bits 4\n1102\n", source="m.bits")
        assert info.value.line == 2

    def test_undecodable_program(self):
        with pytest.raises(FormatError, match="width header"):
            parse_bits("bits 3\n111\n")


class TestFiles:
    """Test read_file and write_file"""

    def test_extension_dispatch(self, tmp_path, path5):
        path = tmp_path / "sub" / "g.graph"
        write_file(str(path), format_graph(path5))
        assert read_file(str(path)) == path5

    def test_unknown_extension(self, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("graph 1\n")
        with pytest.raises(FormatError, match="Unknown artifact extension"):
            read_file(str(path))

    def test_errors_name_the_file(self, tmp_path):
        path = tmp_path / "bad.set"
        path.write_text("set 1 x\n")
        with pytest.raises(FormatError) as info:
            read_file(str(path))
        assert info.value.source == str(path)
        assert info.value.line == 1
