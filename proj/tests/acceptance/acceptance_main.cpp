// Acceptance harness. Each criterion prints exactly one line,
//
//   C<n> <what it checks>: pass
//   C<n> <what it checks>: FAIL (<detail>)
//
// and the process exits nonzero when any requested criterion fails. Sample
// counts and seeds are fixed here so runs are reproducible.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "exnet/annotate.hpp"
#include "exnet/cutelim.hpp"
#include "exnet/derivation.hpp"
#include "exnet/metatheory.hpp"
#include "exnet/net.hpp"
#include "exnet/netgraph.hpp"
#include "exnet/nnet.hpp"
#include "exnet/seq.hpp"
#include "exnet/subnet.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace exnet;
using testgen::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(const std::string& detail) { return {false, detail}; }

constexpr int kAgreementSamples = 5000;
constexpr int kContractionPairs = 1000;
constexpr int kRoundTrips = 2000;
constexpr int kCutNets = 1000;
constexpr int kKingdomNets = 200;
constexpr int kCeQueries = 2000;
constexpr int kTranslations = 1000;
constexpr int kLinkingRuns = 1000;

// C1: the polynomial correctness check answers exactly like full switching
// enumeration, on built nets and on mutated ones.
Outcome criterion1() {
  Rng rng(20101);
  int accepted = 0;
  for (int attempt = 0; attempt < 20 * kAgreementSamples && accepted < kAgreementSamples;
       ++attempt) {
    Deriv d = testgen::random_lkstar(rng, 2 + rng.below(7));
    TypedForest f = desequentialize(d, System::LKstar);
    if (rng.chance(0.5)) {
      int edits = 1 + rng.below(3);
      for (int e = 0; e < edits; ++e)
        if (!testgen::mutate_forest(rng, f)) break;
    }
    if (!testgen::small_enough(f)) continue;
    bool fast = ac_correct_poly(f);
    bool slow = ac_correct_bruteforce(f);
    if (fast != slow)
      return fail("disagreement on sample " + std::to_string(accepted) + ": " +
                  print_net(f));
    ++accepted;
  }
  if (accepted < kAgreementSamples)
    return fail("only " + std::to_string(accepted) + " samples were enumerable");
  return {};
}

// C2: moving a contraction past independent rules, or past another
// contraction, leaves the constructed net unchanged up to renaming.
Outcome criterion2() {
  TypedForest early = desequentialize(testfix::contraction_early(), System::LKstar);
  TypedForest late = desequentialize(testfix::contraction_late(), System::LKstar);
  if (!alpha_equal(early, late))
    return fail("the fixed early/late contraction pair built distinct nets");

  Rng rng(20202);
  for (int i = 0; i < kContractionPairs; ++i) {
    Formula a, b;
    do a = testgen::random_cut_formula(rng, 1 + rng.below(2));
    while (a->kind == FKind::Or);
    do b = testgen::random_cut_formula(rng, 1 + rng.below(2));
    while (b->kind == FKind::Or);

    auto [da1, pa1] = testgen::derive_with(rng, a, 1 + rng.below(2));
    auto [da2, pa2] = testgen::derive_with(rng, a, 1 + rng.below(2));
    auto [db1, pb1] = testgen::derive_with(rng, b, 1 + rng.below(2));
    auto [db2, pb2] = testgen::derive_with(rng, b, 1 + rng.below(2));

    Deriv m = mk_mix(mk_mix(da1, da2), mk_mix(db1, db2));
    int na = static_cast<int>(da1->conclusion.size());
    int nm1 = na + static_cast<int>(da2->conclusion.size());
    int nb = static_cast<int>(db1->conclusion.size());
    int a1 = pa1, a2 = na + pa2;
    int b1 = nm1 + pb1, b2 = nm1 + nb + pb2;
    int total = static_cast<int>(m->conclusion.size());

    Deriv ab = mk_c(mk_c(m, a1, a2), b1 - 2, b2 - 2);
    Deriv ba = mk_c(mk_c(m, b1, b2), a1, a2);
    if (!check_derivation(ab, System::LKstar) || !check_derivation(ba, System::LKstar))
      return fail("a contraction pair fell outside the calculus at sample " +
                  std::to_string(i));

    std::vector<int> order;
    for (int k = 0; k < total - 4; ++k) order.push_back(k);
    order.push_back(total - 3);
    order.push_back(total - 4);
    Deriv ba_aligned = permute_conclusion(ba, order);
    if (!sequent_equal(ab->conclusion, ba_aligned->conclusion))
      return fail("conclusion alignment failed at sample " + std::to_string(i));

    TypedForest fa = desequentialize(ab, System::LKstar);
    TypedForest fb = desequentialize(ba_aligned, System::LKstar);
    if (!alpha_equal(fa, fb))
      return fail("contraction order changed the net at sample " + std::to_string(i));
  }
  return {};
}

// C3: every constructed net sequentializes, the recovered derivation checks
// out, and rebuilding from it gives the same net back.
Outcome criterion3() {
  Rng rng(20303);
  for (int i = 0; i < kRoundTrips; ++i) {
    Deriv d = testgen::random_lkstar(rng, 2 + rng.below(7));
    TypedForest f = desequentialize(d, System::LKstar);
    std::string why;
    auto ann = try_sequentialize(f, &why);
    if (!ann)
      return fail("sample " + std::to_string(i) + " did not sequentialize: " + why);
    if (!check_annotated(*ann, false, &why))
      return fail("recovered derivation broke at sample " + std::to_string(i) + ": " + why);
    auto [plain, system] = strip_annotations(*ann);
    if (system != System::LKstar)
      return fail("cut-free net stripped to the wrong system at sample " + std::to_string(i));
    TypedForest back = desequentialize(plain, system);
    if (!alpha_equal(back, f))
      return fail("round trip changed the net at sample " + std::to_string(i));
  }
  return {};
}

// C4: the worked cut net reduces through the fixed eleven step schedule and
// normalizes to the pinned compact form.
Outcome criterion4() {
  TypedForest f = parse_net(testfix::kCutNetText);
  Elimination e = eliminate_all(f);

  std::vector<RedexKind> expected{
      RedexKind::AndOr,     RedexKind::Atomic, RedexKind::Contraction,
      RedexKind::AndOr,     RedexKind::Atomic, RedexKind::Weakening,
      RedexKind::Atomic,    RedexKind::AndOr,  RedexKind::Atomic,
      RedexKind::Weakening, RedexKind::Atomic};
  std::vector<RedexKind> got;
  for (const auto& step : e.trace) got.push_back(step.kind);
  if (got != expected) {
    std::string steps;
    for (const auto& step : e.trace) steps += std::string(" ") + redex_name(step.kind);
    return fail("reduction schedule was" + steps);
  }
  if (!type_check(e.net) || !ac_correct_poly(e.net))
    return fail("the normal form is not a correct net");
  TypedForest compact = parse_net(testfix::kCutNetNormal);
  if (!alpha_equal(e.net, compact))
    return fail("normal form is correct and cut free but keeps separate duplicates, "
                "not the pinned compact net: " + print_net(e.net));
  return {};
}

// C5: cut elimination terminates on random cut nets and outputs correct
// cut-free nets over a subsequent of the original conclusion.
Outcome criterion5() {
  Rng rng(20505);
  for (int i = 0; i < kCutNets; ++i) {
    Formula a = testgen::random_cut_formula(rng, 1 + rng.below(3));
    TypedForest f = testgen::random_cut_net(rng, a, 2 + rng.below(5));
    Sequent before = classical_sequent(f);
    Elimination e;
    try {
      e = eliminate_all(f);
    } catch (const ContractViolation& err) {
      return fail("sample " + std::to_string(i) + " raised: " + err.what());
    }
    for (NodeId r : e.net.roots)
      if (e.net.node(r).kind == NodeKind::CutNode)
        return fail("cuts survived at sample " + std::to_string(i));
    if (!type_check(e.net) || !ac_correct_poly(e.net))
      return fail("normal form incorrect at sample " + std::to_string(i));
    if (!is_subsequent(classical_sequent(e.net), before))
      return fail("conclusion grew at sample " + std::to_string(i));
  }
  return {};
}

// C6: kingdoms match exhaustive minimization on small nets, contiguous
// empires are contiguous subnets, and the split net separates empires from
// both kingdoms and contiguous empires.
Outcome criterion6() {
  Rng rng(20606);
  int nets = 0;
  for (int attempt = 0; attempt < 30 * kKingdomNets && nets < kKingdomNets; ++attempt) {
    Deriv d = testgen::random_lkstar(rng, 1 + rng.below(3));
    TypedForest f = desequentialize(d, System::LKstar);
    if (f.nodes.size() > 12) continue;
    for (const auto& [id, node] : f.nodes) {
      if (node.kind == NodeKind::Star) continue;
      auto best = testor::kingdom_oracle(f, id);
      if (!best)
        return fail("no unique smallest subnet around node " + std::to_string(id) +
                    " in " + print_net(f));
      if (kingdom(f, id) != *best)
        return fail("kingdom mismatch at node " + std::to_string(id) + " in " +
                    print_net(f));
    }
    ++nets;
  }
  if (nets < kKingdomNets)
    return fail("only " + std::to_string(nets) + " small nets were generated");

  int queries = 0;
  while (queries < kCeQueries) {
    Deriv d = testgen::random_lkstar(rng, 2 + rng.below(7));
    TypedForest f = desequentialize(d, System::LKstar);
    std::vector<NodeId> ids;
    for (const auto& [id, node] : f.nodes)
      if (node.kind != NodeKind::Star) ids.push_back(id);
    for (int pick = 0; pick < 5 && queries < kCeQueries; ++pick) {
      NodeId x = ids[static_cast<std::size_t>(rng.below(static_cast<int>(ids.size())))];
      std::set<NodeId> ce = contiguous_empire(f, x);
      if (!is_subnet(f, ce))
        return fail("contiguous empire of node " + std::to_string(x) +
                    " is not a subnet in " + print_net(f));
      if (!contiguous_within(f, x, ce))
        return fail("contiguous empire of node " + std::to_string(x) +
                    " is not contiguous in " + print_net(f));
      std::set<NodeId> k = kingdom(f, x);
      for (NodeId v : k)
        if (!ce.count(v))
          return fail("kingdom escapes the contiguous empire at node " +
                      std::to_string(x) + " in " + print_net(f));
      ++queries;
    }
  }

  TypedForest split = parse_net(testfix::kSplitEmpireText);
  NodeId tensor = split.node(split.roots[1]).kids[0];
  NodeId a = split.node(tensor).kids[0];
  NodeId b = split.node(tensor).kids[1];
  auto whole = [&split](NodeId r) { return subtree_of(split, r); };

  std::set<NodeId> ea{a, split.node(a).kids[0], split.roots[0],
                      split.node(split.roots[0]).kids[0]};
  for (NodeId n : whole(split.roots[3])) ea.insert(n);
  for (NodeId n : whole(split.roots[4])) ea.insert(n);
  std::set<NodeId> eb{b, split.node(b).kids[0], split.roots[2],
                      split.node(split.roots[2]).kids[0]};
  for (NodeId n : whole(split.roots[3])) eb.insert(n);
  for (NodeId n : whole(split.roots[4])) eb.insert(n);

  EmpireNote note_a = empire_note(split, a);
  EmpireNote note_b = empire_note(split, b);
  if (note_a.nodes != ea || !note_a.subnet) return fail("largest subnet around the left branch is off");
  if (note_b.nodes != eb || !note_b.subnet) return fail("largest subnet around the right branch is off");

  std::set<NodeId> both = ea;
  both.insert(eb.begin(), eb.end());
  if (!is_substructure(split, both) || is_subnet(split, both))
    return fail("the union of the two empires should be a substructure but no subnet");

  std::set<NodeId> ce_a{a, split.node(a).kids[0], split.roots[0],
                        split.node(split.roots[0]).kids[0]};
  if (contiguous_empire(split, a) != ce_a)
    return fail("contiguous empire of the left branch is off");
  if (contiguous_within(split, a, ea))
    return fail("the full empire of the left branch should not be contiguous");
  return {};
}

// C7: derivations with weakening translate into the star calculus, proving
// a subsequent of the original conclusion.
Outcome criterion7() {
  Deriv weak = mk_w(mk_ax(Atom("a", false)), mk_atom("b", false));
  Deriv golden = lk_to_lkstar(weak);
  std::string why;
  if (!check_derivation(golden, System::LKstar, &why))
    return fail("translated axiom broke: " + why);
  if (!sequent_equal_multiset(golden->conclusion, parse_sequent("a, ~a")))
    return fail("translated axiom concluded " + print_sequent(golden->conclusion));

  Rng rng(20707);
  for (int i = 0; i < kTranslations; ++i) {
    Deriv d = testgen::random_lk(rng, 2 + rng.below(6));
    Deriv t = lk_to_lkstar(d);
    if (!check_derivation(t, System::LKstar, &why))
      return fail("sample " + std::to_string(i) + " broke: " + why);
    if (t->conclusion.empty() || !is_subsequent(t->conclusion, d->conclusion))
      return fail("sample " + std::to_string(i) + " concluded " +
                  print_sequent(t->conclusion) + " from " + print_sequent(d->conclusion));
  }
  return {};
}

// C8: a derivation and its net carry the same axiom linking, and the fixed
// pair with equal linkings still builds two different nets.
Outcome criterion8() {
  Rng rng(20808);
  for (int i = 0; i < kLinkingRuns; ++i) {
    Deriv d = testgen::random_lkstar(rng, 2 + rng.below(6));
    NNet direct = nnet_of_derivation(d);
    NNet via_net = extract_nnet(desequentialize(d, System::LKstar));
    if (!nnet_equal(direct, via_net))
      return fail("linkings diverged at sample " + std::to_string(i) + ": " +
                  print_nnet(direct) + " vs " + print_nnet(via_net));
  }

  Deriv first = testfix::linking_pair_first();
  Deriv second = testfix::linking_pair_second();
  if (!nnet_equal(nnet_of_derivation(first), nnet_of_derivation(second)))
    return fail("the fixed pair should share one linking");
  if (alpha_equal(desequentialize(first, System::LKstar),
                  desequentialize(second, System::LKstar)))
    return fail("the fixed pair should build distinct nets");
  return {};
}

struct Criterion {
  const char* label;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"polynomial correctness check agrees with switching enumeration", criterion1},
    {"contraction placement does not change the built net", criterion2},
    {"sequentialization inverts net construction", criterion3},
    {"the worked cut net reduces to the pinned normal form", criterion4},
    {"cut elimination is total and correctness preserving", criterion5},
    {"kingdoms, contiguous empires and the split empire net", criterion6},
    {"weakening translates into the star rules", criterion7},
    {"equal linkings, same or different nets", criterion8},
};

}  // namespace

int main(int argc, char** argv) {
  int which = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 64;
    }
  }
  if (which < 0 || which > 8) {
    std::fprintf(stderr, "criterion out of range: %d\n", which);
    return 64;
  }

  bool all_ok = true;
  for (int n = 1; n <= 8; ++n) {
    if (which != 0 && which != n) continue;
    Outcome out;
    try {
      out = kCriteria[n - 1].run();
    } catch (const std::exception& e) {
      out = fail(std::string("unexpected exception: ") + e.what());
    }
    if (out.ok)
      std::printf("C%d %s: pass\n", n, kCriteria[n - 1].label);
    else
      std::printf("C%d %s: FAIL (%s)\n", n, kCriteria[n - 1].label, out.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && out.ok;
  }
  return all_ok ? 0 : 1;
}
