#include <doctest.h>

#include <stdexcept>

#include "triff/msolab/structure.hpp"
#include "triff/msolab/structure_io.hpp"

using namespace triff::msolab;

TEST_CASE("word structures") {
  const LabStructure w = LabStructure::word(3, 3, {0, 1, 2});
  CHECK(w.size() == 3);
  CHECK(w.branching() == 1);
  CHECK(w.succ(0, 0, 1));
  CHECK(w.succ(0, 1, 2));
  CHECK_FALSE(w.succ(0, 2, 0));
  CHECK(w.letter(1) == 1);
  CHECK(w.child(2, 0) == -1);

  CHECK(LabStructure::word(0).size() == 0);
  CHECK_THROWS_AS(LabStructure::word(-1), std::invalid_argument);
  CHECK_THROWS_AS(LabStructure::word(2, 2, {0, 2}), std::invalid_argument);
}

TEST_CASE("tree structures") {
  const LabStructure t = LabStructure::full_tree(3, 1);
  CHECK(t.size() == 4);
  CHECK(t.constant_element("root") == 0);
  CHECK(t.succ(0, 0, 1));
  CHECK(t.succ(1, 0, 2));
  CHECK(t.succ(2, 0, 3));
  CHECK(LabStructure::full_tree(3, 2).size() == 13);

  // prefix closure is required
  CHECK_THROWS_AS(LabStructure::tree_from_nodes(3, {"", "01"}), std::invalid_argument);
  CHECK_THROWS_AS(LabStructure::tree_from_nodes(3, {"0"}), std::invalid_argument);
  CHECK_THROWS_AS(LabStructure::tree_from_nodes(2, {"", "2"}), std::invalid_argument);
  CHECK(LabStructure::tree_from_nodes(3, {"", "1", "12"}).size() == 3);
}

TEST_CASE("expansions") {
  LabStructure w = LabStructure::word(3);
  w = w.with_constant("c1", 1).with_set("V", 0b101);
  CHECK(w.constant_element("c1") == 1);
  REQUIRE(w.set_members("V") != nullptr);
  CHECK(*w.set_members("V") == 0b101);
  CHECK_THROWS_AS(w.with_constant("c1", 0), std::invalid_argument);
  CHECK_THROWS_AS(w.with_constant("c2", 9), std::invalid_argument);
  CHECK_THROWS_AS(w.with_set("V", 1), std::invalid_argument);
  CHECK_THROWS_AS(w.with_set("W", 0b1000), std::invalid_argument);
}

TEST_CASE("restriction to a branch") {
  LabStructure t = LabStructure::full_tree(3, 1);
  // leaves: indices 1..3 for branches 0..2
  t = t.with_set("V", 0b1110).with_constant("c", 2);

  const LabStructure t0 = t.restrict_to_branch(0);
  CHECK(t0.size() == 2);  // root and "0"
  CHECK(t0.constant_element("root") == 0);
  CHECK(t0.constant_element("c") == -1);  // dropped with its branch
  CHECK(*t0.set_members("V") == 0b10);    // leaves starting with 0

  const LabStructure t1 = t.restrict_to_branch(1);
  CHECK(t1.size() == 2);
  CHECK(t1.constant_element("c") == 1);  // survives in its own branch
  CHECK(*t1.set_members("V") == 0b10);

  // restriction is idempotent on the domain
  const LabStructure again = t1.restrict_to_branch(1);
  CHECK(again.size() == t1.size());
  CHECK(again.canonical_form() == t1.canonical_form());

  CHECK_THROWS_AS(t.restrict_to_branch(3), std::invalid_argument);
  CHECK_THROWS_AS(LabStructure::word(2).restrict_to_branch(0), std::invalid_argument);

  // depth-2: branch keeps its subtree
  const LabStructure deep = LabStructure::full_tree(3, 2).restrict_to_branch(2);
  CHECK(deep.size() == 5);  // root, "2", "20", "21", "22"
  CHECK(deep.node_index("20") >= 0);
  CHECK(deep.node_index("00") == -1);
}

TEST_CASE("canonical forms serialize by index, not by node name") {
  // a restriction matches a directly built copy of the same subtree
  const LabStructure t = LabStructure::full_tree(3, 2);
  const LabStructure direct =
      LabStructure::tree_from_nodes(3, {"", "1", "10", "11", "12"});
  CHECK(t.restrict_to_branch(1).canonical_form() == direct.canonical_form());
  // different branch index changes the edge labels, hence the form
  CHECK(t.restrict_to_branch(0).canonical_form() != t.restrict_to_branch(1).canonical_form());

  const LabStructure a = LabStructure::word(3).with_set("V", 0b001);
  const LabStructure b = LabStructure::word(3).with_set("V", 0b010);
  CHECK(a.canonical_form() != b.canonical_form());
}

TEST_CASE("vocabulary comparison") {
  const LabStructure a = LabStructure::word(2).with_set("V", 0);
  const LabStructure b = LabStructure::word(3).with_set("V", 1);
  CHECK(LabStructure::same_vocabulary(a, b));
  CHECK_FALSE(LabStructure::same_vocabulary(a, LabStructure::word(2)));
  CHECK_FALSE(LabStructure::same_vocabulary(a, LabStructure::word(2, 2, {0, 1}).with_set("V", 0)));
  CHECK_FALSE(LabStructure::same_vocabulary(LabStructure::full_tree(2, 1),
                                            LabStructure::full_tree(3, 1)));
}

TEST_CASE("structure files round trip") {
  LabStructure t = LabStructure::full_tree(3, 1)
                       .with_letters({0, 1, 2, 0}, 3)
                       .with_constant("c", 1)
                       .with_set("V", 0b1010);
  const std::string text = render_structure(t);
  const LabStructure back = parse_structure(text);
  CHECK(back.canonical_form() == t.canonical_form());
  CHECK(render_structure(back) == text);

  const LabStructure w = parse_structure(
      "triff-structure v1\nshape word\nlength 3\nalphabet 3\nletters 0,1,2\nset V 0,2\n");
  CHECK(w.size() == 3);
  CHECK(w.letter(2) == 2);
  CHECK(*w.set_members("V") == 0b101);

  CHECK_THROWS_WITH_AS(parse_structure("shape word\n"), doctest::Contains("line 1"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_structure("triff-structure v1\nshape word\nlength 2\nconstant c 7\n"),
      doctest::Contains("line 4"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_structure("triff-structure v1\nshape word\nlength 2\nwhat 3\n"),
                       doctest::Contains("unknown key"), std::runtime_error);
}
