#include "doctest.h"

#include "exnet/annotate.hpp"
#include "exnet/net.hpp"
#include "support/fixtures.hpp"

#include <algorithm>
#include <string>

using namespace exnet;
using namespace exnet::testfix;

TEST_CASE("net parsing and printing round trip") {
  const char* samples[] = {
      kPeirceText,
      kCutNetText,
      kCutNetNormal,
      kOrContractionText,
      kTensorPairText,
      kSplitEmpireText,
      kFromBelowText,
      kReplaceHostText,
      kReplaceGraftText,
      kReplaceResultText,
      "1 : T",
      "(1 \\/ *) : T \\/ F, ({x} \\/ 1) : p \\/ T, {~x} : ~p",
  };
  for (const char* s : samples) {
    TypedForest f = parse_net(s);
    std::string why;
    CHECK_MESSAGE(validate_forest(f, &why), why);
    CHECK_MESSAGE(type_check(f, &why), why);
    CHECK(print_net(f) == s);
    CHECK(alpha_equal(f, parse_net(print_net(f))));
  }
}

TEST_CASE("net grammar errors") {
  CHECK_THROWS_AS(parse_net(""), ParseError);
  CHECK_THROWS_AS(parse_net("{x + } : p"), ParseError);
  CHECK_THROWS_AS(parse_net("{x} p"), ParseError);
  CHECK_THROWS_AS(parse_net("* : p"), ParseError);
  CHECK_THROWS_AS(parse_net("(* \\/ *) : p \\/ p"), ParseError);
  CHECK_THROWS_AS(parse_net("{T} : p"), ParseError);
  CHECK_THROWS_AS(parse_net("{x} : p || {~x}"), ParseError);
  CHECK_THROWS_AS(parse_net("({x} >< {y} >< {z}) : p"), ParseError);
}

TEST_CASE("structural validation") {
  std::string why;

  TypedForest lone = parse_net("{x} : p");
  CHECK_FALSE(validate_forest(lone, &why));

  TypedForest dup = parse_net("{x + x} : p, {~x} : ~p");
  CHECK_FALSE(validate_forest(dup, &why));

  TypedForest mixed = parse_net("{x + ({y} >< {~y})} : p, {~x} : ~p");
  CHECK_FALSE(validate_forest(mixed, &why));
}

TEST_CASE("typing discipline") {
  std::string why;

  TypedForest wrong = parse_net("{x} : q, {~x} : ~p");
  CHECK(validate_forest(wrong, &why));
  CHECK_FALSE(type_check(wrong, &why));

  TypedForest flipped = parse_net("{~x} : p, {x} : ~p");
  CHECK_FALSE(type_check(flipped, &why));

  TypedForest narrow = parse_net("{x} : p \\/ p, {~x} : ~p");
  CHECK_FALSE(type_check(narrow, &why));

  TypedForest cut_unit = parse_net("1 : T || {x} : F, {~x} : ~p");
  CHECK_FALSE(type_check(cut_unit, &why));
}

TEST_CASE("alpha equality is renaming plus cut symmetry") {
  TypedForest peirce = parse_net(kPeirceText);

  TypedForest renamed = parse_net(
      "{(({~u} \\/ *) >< {~v})} : (~p \\/ q) /\\ ~p, {u + v} : p");
  CHECK(alpha_equal(peirce, renamed));

  TypedForest left = parse_net("({x} \\/ *) : p \\/ p, {~x} : ~p");
  TypedForest right = parse_net("(* \\/ {x}) : p \\/ p, {~x} : ~p");
  CHECK_FALSE(alpha_equal(left, right));

  TypedForest swapped_roots = parse_net(
      "{x + y} : p, {(({~x} \\/ *) >< {~y})} : (~p \\/ q) /\\ ~p");
  CHECK_FALSE(alpha_equal(peirce, swapped_roots));

  TypedForest cut = parse_net(kCutNetText);
  TypedForest cut2 = parse_net(kCutNetText);
  for (NodeId r : cut2.roots) {
    if (cut2.node(r).kind == NodeKind::CutNode)
      std::swap(cut2.node(r).kids[0], cut2.node(r).kids[1]);
  }
  std::string why;
  CHECK_MESSAGE(type_check(cut2, &why), why);
  CHECK(alpha_equal(cut, cut2));
  CHECK(print_net(cut) != print_net(cut2));
}

TEST_CASE("canonicalization fixes presentation choices") {
  TypedForest a = parse_net(kPeirceText);
  TypedForest b = parse_net(
      "{(({~x} \\/ *) >< {~y})} : (~p \\/ q) /\\ ~p, {y + x} : p");
  canonicalize(a);
  canonicalize(b);
  CHECK(print_net(a) == print_net(b));

  TypedForest cut = parse_net(kCutNetText);
  TypedForest cut2 = parse_net(kCutNetText);
  for (NodeId r : cut2.roots) {
    if (cut2.node(r).kind == NodeKind::CutNode)
      std::swap(cut2.node(r).kids[0], cut2.node(r).kids[1]);
  }
  canonicalize(cut);
  canonicalize(cut2);
  CHECK(print_net(cut) == print_net(cut2));
}

TEST_CASE("classical sequent of a forest") {
  CHECK(print_sequent(classical_sequent(parse_net(kPeirceText))) ==
        "(~p \\/ q) /\\ ~p, p");
  CHECK(print_sequent(classical_sequent(parse_net(kReplaceGraftText))) ==
        "~p, ~p, p");
  CHECK(print_sequent(classical_sequent(parse_net(kCutNetText))) ==
        "~q, ~p /\\ ~p, (q \\/ q) /\\ (p /\\ q)");
}

TEST_CASE("root types") {
  TypedForest graft = parse_net(kReplaceGraftText);
  std::vector<NetType> ts = net_type(graft);
  REQUIRE(ts.size() == 3);
  CHECK(ts[0].kind == TypeKind::WitnessT);
  CHECK(ts[1].kind == TypeKind::WitnessT);
  CHECK(ts[2].kind == TypeKind::ClassicalT);
  CHECK(print_type(ts[0]) == "[~p]");
  CHECK(print_type(ts[2]) == "p");
}

TEST_CASE("structural hashing ignores wire names but not polarity") {
  TypedForest f = parse_net("{x + y} : p, {~x + ~y} : ~p");
  TypedForest g = parse_net("{u + v} : p, {~u + ~v} : ~p");
  CHECK(structural_hash(f, f.roots[0]) == structural_hash(g, g.roots[0]));
  CHECK(structural_hash(f, f.roots[0]) != structural_hash(f, f.roots[1]));
}

TEST_CASE("forest navigation") {
  TypedForest f = parse_net(kPeirceText);
  auto par = parents_of(f);
  std::size_t non_roots = f.nodes.size() - f.roots.size();
  CHECK(par.size() == non_roots);
  for (NodeId r : f.roots) CHECK(par.count(r) == 0);

  std::vector<NodeId> sub = subtree_of(f, f.roots[0]);
  CHECK(sub.size() == 8);
  CHECK(sub.front() == f.roots[0]);

  std::size_t total = 0;
  for (NodeId r : f.roots) total += subtree_of(f, r).size();
  CHECK(total == f.nodes.size());
}

TEST_CASE("nets forget the order of contractions") {
  TypedForest early = desequentialize(contraction_early(), System::LKstar);
  TypedForest late = desequentialize(contraction_late(), System::LKstar);
  std::string why;
  CHECK_MESSAGE(type_check(early, &why), why);
  CHECK(alpha_equal(early, late));
}
