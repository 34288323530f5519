#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "exnet/annotate.hpp"
#include "exnet/cutelim.hpp"
#include "exnet/net.hpp"
#include "exnet/seq.hpp"
#include "exnet/sequent.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace exnet;

namespace {

NodeId only_cut(const TypedForest& f) {
  NodeId found = 0;
  int hits = 0;
  for (NodeId r : f.roots) {
    if (f.node(r).kind == NodeKind::CutNode) {
      found = r;
      ++hits;
    }
  }
  REQUIRE(hits == 1);
  return found;
}

NodeId wire_id(const TypedForest& f, const std::string& sym, bool neg) {
  NodeId found = 0;
  int hits = 0;
  for (const auto& [id, node] : f.nodes) {
    if (node.kind == NodeKind::Wire && node.wire.sym == sym && node.wire.neg == neg) {
      found = id;
      ++hits;
    }
  }
  REQUIRE(hits == 1);
  return found;
}

std::vector<RedexKind> kinds_of(const std::vector<ReductionStep>& trace) {
  std::vector<RedexKind> out;
  for (const auto& step : trace) out.push_back(step.kind);
  return out;
}

void check_trace_entry(const RootTrace& got, int from, bool closed) {
  CHECK(got.from == from);
  CHECK(got.closed == closed);
}

}  // namespace

TEST_CASE("cut classification reads the positive side") {
  TypedForest f = parse_net(testfix::kCutNetText);
  NodeId cut = only_cut(f);

  NodeId pos = positive_side(f, cut);
  CHECK(f.node(pos).kind == NodeKind::Expansion);
  CHECK(print_type(f.types.at(pos)) == "((q \\/ q) /\\ p) /\\ q");
  CHECK(positive_width(f, cut) == 1);
  CHECK(classify_cut(f, cut) == RedexKind::AndOr);
  CHECK(non_cut_root_count(f) == 3);

  Reduction first = reduce_cut(f, cut);
  CHECK(first.kind == RedexKind::AndOr);
  CHECK(first.cuts.size() == 2);
  CHECK(type_check(first.net));
  for (std::size_t i = 0; i < first.roots.size(); ++i)
    check_trace_entry(first.roots[i], static_cast<int>(i), false);
}

TEST_CASE("atomic step closes a witness root into a classical one") {
  TypedForest f = parse_net("u : [p], {~u} : ~p || {x + y} : p, {~x + ~y} : ~p");
  CHECK(classify_cut(f, only_cut(f)) == RedexKind::Atomic);

  Elimination e = eliminate_all(f);
  CHECK(kinds_of(e.trace) == std::vector<RedexKind>{RedexKind::Atomic});
  CHECK(alpha_equal(e.net, parse_net("{x + y} : p, {~x + ~y} : ~p")));
  REQUIRE(e.roots.size() == 2);
  check_trace_entry(e.roots[0], 0, true);
  check_trace_entry(e.roots[1], 1, false);
}

TEST_CASE("atomic step splices the dual expansion in place") {
  TypedForest f = parse_net("{~x} : ~p || {w} : p, {x + y} : p, {~w + ~y} : ~p");
  Elimination e = eliminate_all(f);
  CHECK(kinds_of(e.trace) == std::vector<RedexKind>{RedexKind::Atomic});
  CHECK(alpha_equal(e.net, parse_net("{w + y} : p, {~w + ~y} : ~p")));
  REQUIRE(e.roots.size() == 2);
  check_trace_entry(e.roots[0], 0, false);
  check_trace_entry(e.roots[1], 1, false);
}

TEST_CASE("weakening drops the starred component's part of the net") {
  Deriv d1 = mk_and(mk_ax(Atom("p", false)), 0, mk_ax(Atom("q", false)), 0);
  Deriv d2 = mk_or0(mk_ax(Atom("p", false)), 1, mk_atom("q", true));
  Deriv cut = mk_cut(d1, 2, d2, 1);
  REQUIRE(print_sequent(cut->conclusion) == "~p, ~q, p");

  TypedForest f = desequentialize(cut, System::LKstarCut);
  CHECK(classify_cut(f, only_cut(f)) == RedexKind::Weakening);

  Elimination e = eliminate_all(f);
  CHECK(kinds_of(e.trace) ==
        std::vector<RedexKind>{RedexKind::Weakening, RedexKind::Atomic});
  CHECK(alpha_equal(e.net, parse_net("{~u} : ~p, {u} : p")));
  REQUIRE(e.roots.size() == 2);
  check_trace_entry(e.roots[0], 0, false);
  check_trace_entry(e.roots[1], 2, false);
}

TEST_CASE("the worked cut net normalizes step by step") {
  TypedForest f = parse_net(testfix::kCutNetText);
  Sequent before = classical_sequent(f);
  NodeId cut = only_cut(f);

  Elimination e = eliminate_all(f);
  std::vector<RedexKind> expected{
      RedexKind::AndOr,       RedexKind::Atomic, RedexKind::Contraction,
      RedexKind::AndOr,       RedexKind::Atomic, RedexKind::Weakening,
      RedexKind::Atomic,      RedexKind::AndOr,  RedexKind::Atomic,
      RedexKind::Weakening,   RedexKind::Atomic};
  CHECK(kinds_of(e.trace) == expected);

  for (NodeId r : e.net.roots) CHECK(e.net.node(r).kind != NodeKind::CutNode);
  CHECK(type_check(e.net));
  CHECK(ac_correct_poly(e.net));
  CHECK(sequent_equal_multiset(classical_sequent(e.net), before));
  REQUIRE(e.roots.size() == 3);
  for (int i = 0; i < 3; ++i) check_trace_entry(e.roots[i], i, false);

  Elimination direct = eliminate_cut(f, cut);
  CHECK(kinds_of(direct.trace) == expected);
  CHECK(alpha_equal(direct.net, e.net));
}

TEST_CASE("subnet replacement closes mapped roots and weakens the rest") {
  TypedForest host = parse_net(testfix::kReplaceHostText);
  TypedForest graft = parse_net(testfix::kReplaceGraftText);
  REQUIRE(graft.roots.size() == 3);

  NodeId cut = only_cut(host);
  std::set<NodeId> region;
  for (NodeId n : subtree_of(host, cut)) region.insert(n);
  region.insert(wire_id(host, "x", true));
  region.insert(wire_id(host, "y", true));
  region.insert(wire_id(host, "w", false));
  region.insert(wire_id(host, "v", false));
  for (NodeId n : subtree_of(host, host.roots[2])) region.insert(n);
  REQUIRE(region.size() == 19);

  std::map<NodeId, NodeId> root_map;
  root_map[graft.roots[0]] = wire_id(host, "x", true);
  root_map[graft.roots[1]] = wire_id(host, "y", true);
  root_map[graft.roots[2]] = wire_id(host, "v", false);

  Replacement rep = replace_subnet(host, region, graft, root_map);
  CHECK(type_check(rep.net));
  CHECK(alpha_equal(rep.net, parse_net(testfix::kReplaceResultText)));
  REQUIRE(rep.roots.size() == 2);
  check_trace_entry(rep.roots[0], 0, false);
  check_trace_entry(rep.roots[1], 2, false);
}

TEST_CASE("elimination rejects bad starting points") {
  TypedForest peirce = parse_net(testfix::kPeirceText);
  CHECK_THROWS_AS(eliminate_cut(peirce, peirce.roots[0]), ContractViolation);

  Elimination none = eliminate_all(peirce);
  CHECK(none.trace.empty());
  CHECK(alpha_equal(none.net, peirce));
  REQUIRE(none.roots.size() == 2);
  check_trace_entry(none.roots[0], 0, false);
  check_trace_entry(none.roots[1], 1, false);

  TypedForest bad =
      parse_net("{({x} >< {~x})} : p /\\ ~p, {~u} : ~q || {u} : q");
  REQUIRE(type_check(bad));
  REQUIRE_FALSE(ac_correct_poly(bad));
  CHECK_THROWS_AS(eliminate_cut(bad, only_cut(bad)), ContractViolation);
  CHECK_THROWS_AS(eliminate_all(bad), ContractViolation);
}

TEST_CASE("random cut nets normalize to correct cut-free nets") {
  testgen::Rng rng(90210);
  int done = 0;
  for (int attempt = 0; attempt < 80 && done < 50; ++attempt) {
    Formula a = testgen::random_cut_formula(rng, 1 + rng.below(3));
    TypedForest f = testgen::random_cut_net(rng, a, 2 + rng.below(5));
    Sequent before = classical_sequent(f);

    Elimination e = eliminate_all(f);
    for (NodeId r : e.net.roots)
      REQUIRE(e.net.node(r).kind != NodeKind::CutNode);
    CHECK_MESSAGE(type_check(e.net), print_net(e.net));
    CHECK_MESSAGE(ac_correct_poly(e.net), print_net(e.net));

    Sequent after = classical_sequent(e.net);
    CHECK(is_subsequent(after, before));
    REQUIRE(e.roots.size() == after.size());
    int prev = -1;
    for (std::size_t i = 0; i < e.roots.size(); ++i) {
      REQUIRE(e.roots[i].from > prev);
      prev = e.roots[i].from;
      REQUIRE(e.roots[i].from < static_cast<int>(before.size()));
      CHECK(formula_equal(after.roots[i], before.roots[e.roots[i].from]));
    }
    ++done;
  }
  CHECK(done == 50);
}
