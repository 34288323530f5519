#pragma once

// Hand-pinned nets and derivations shared by the unit and acceptance
// tests. Every net below is written in the text syntax of parse_net.

#include <string>

#include "exnet/derivation.hpp"

namespace exnet::testfix {

// A net with a single compound cut; eliminating it exercises every redex
// kind. The expected reduction trace is pinned in kCutNetTraceKinds.
inline const char* kCutNetText =
    "{~x + ~y + ~z} : ~q, "
    "{({~w} >< {~v})} : ~p /\\ ~p, "
    "{({(({y} \\/ *) >< {w}) + ((* \\/ {x}) >< {v})} >< {z})} : ((q \\/ q) /\\ p) /\\ q"
    " || "
    "(({({~o} >< {~n})} \\/ {~m}) \\/ {~l}) : ((~q /\\ ~q) \\/ ~p) \\/ ~q, "
    "{(({o} \\/ {n}) >< {({m} >< {l})})} : (q \\/ q) /\\ (p /\\ q)";

// The fully reduced companion of kCutNetText with merged duplicates, the
// most compact cut-free form of that sequent.
inline const char* kCutNetNormal =
    "{~x + ~y + ~z} : ~q, "
    "{({~w} >< {~v})} : ~p /\\ ~p, "
    "{(({y} \\/ {x}) >< {({v + w} >< {z})})} : (q \\/ q) /\\ (p /\\ q)";

// Peirce's law paired with its dual atom; sequentializes through a
// contraction over two differently shaped summand witnesses.
inline const char* kPeirceText =
    "{(({~x} \\/ *) >< {~y})} : (~p \\/ q) /\\ ~p, {x + y} : p";

// A three-way atom contraction under a disjunction.
inline const char* kOrContractionText =
    "({({~x} >< {~z})} \\/ {~y}) : (~p /\\ ~p) \\/ ~p, {y + z + x} : p";

// The conjunction fragment of the net above, as its own net. The kingdom
// of the first root is its subtree plus the two bare dual wires.
inline const char* kTensorPairText =
    "{({~x} >< {~z})} : ~p /\\ ~p, {x} : p, {z} : p";

// Two independent components next to an interacting pair; empires of the
// two tensor children each absorb the detached component, and their union
// is not a subnet.
inline const char* kSplitEmpireText =
    "{x} : p, {({~x} >< {y})} : ~p /\\ q, {~y} : ~q, {z} : r, {~z} : ~r";

// A net whose contiguous empire of the last root is everything, but only
// because a switching path enters a switched node from below.
inline const char* kFromBelowText =
    "{(({~z} \\/ {~y}) >< ({~x} \\/ {~w}))} : (~s \\/ ~q) /\\ (~p \\/ ~r), "
    "{z} : s, {w} : r, ({x} \\/ {y}) : p \\/ q";

// Subnet replacement host: the region spanning the cut, the four bare
// wires around it and the {z} root gets replaced by a three-root graft.
inline const char* kReplaceHostText =
    "({~x} \\/ {~y}) : ~p \\/ ~p, "
    "{({~w + ~z} >< {~v})} : ~p /\\ ~p || (* \\/ {x + y}) : p \\/ p, "
    "{z} : p, "
    "({w} \\/ {v}) : p \\/ p";

inline const char* kReplaceGraftText = "~a : [~p], ~b : [~p], {a + b} : p";

inline const char* kReplaceResultText =
    "({~a} \\/ {~b}) : ~p \\/ ~p, (* \\/ {a + b}) : p \\/ p";

// Two derivations of |- (a /\ a) /\ a, ~a differing only in when the two
// ~a roots produced by the first conjunction get contracted.
inline Deriv contraction_early() {
  Atom a("a", false);
  Deriv m1 = mk_and(mk_ax(a), 0, mk_ax(a), 0);
  Deriv c1 = mk_c(m1, 0, 1);
  Deriv m2 = mk_and(c1, 0, mk_ax(a), 0);
  return mk_c(m2, 0, 1);
}

inline Deriv contraction_late() {
  Atom a("a", false);
  Deriv m1 = mk_and(mk_ax(a), 0, mk_ax(a), 0);
  Deriv m2 = mk_and(m1, 2, mk_ax(a), 0);
  Deriv c1 = mk_c(m2, 0, 1);
  return mk_c(c1, 0, 2);
}

// Two derivations of |- (a \/ c) /\ (b \/ d), (~a \/ ~b) /\ (~c \/ ~d):
// the first duplicates and contracts the negative conjunction, the second
// the positive one. They induce the same axiom linking but
// desequentialize to nets that are not alpha equal.
inline Deriv linking_pair_first() {
  Deriv o1 = mk_or0(mk_ax(Atom("a", true)), 0, mk_atom("b", true));
  Deriv o2 = mk_or0(mk_ax(Atom("c", true)), 0, mk_atom("d", true));
  Deriv left = mk_or(mk_and(o1, 1, o2, 1), 0, 1);
  Deriv o3 = mk_or1(mk_ax(Atom("b", true)), 0, mk_atom("a", true));
  Deriv o4 = mk_or1(mk_ax(Atom("d", true)), 0, mk_atom("c", true));
  Deriv right = mk_or(mk_and(o3, 1, o4, 1), 0, 1);
  return mk_c(mk_and(left, 1, right, 1), 0, 1);
}

inline Deriv linking_pair_second() {
  Deriv o1 = mk_or0(mk_ax(Atom("a", false)), 0, mk_atom("c", false));
  Deriv o2 = mk_or0(mk_ax(Atom("b", false)), 0, mk_atom("d", false));
  Deriv left = mk_or(mk_and(o1, 1, o2, 1), 0, 1);
  Deriv o3 = mk_or1(mk_ax(Atom("c", false)), 0, mk_atom("a", false));
  Deriv o4 = mk_or1(mk_ax(Atom("d", false)), 0, mk_atom("b", false));
  Deriv right = mk_or(mk_and(o3, 1, o4, 1), 0, 1);
  Deriv c = mk_c(mk_and(left, 1, right, 1), 0, 1);
  return permute_conclusion(c, {1, 0});
}

}  // namespace exnet::testfix
