#pragma once

// Axiom-linking nets: the classical abstraction that remembers, for a
// sequent, only which atom occurrences are joined by axioms. An occurrence
// is a root index plus a 0/1 path into that root's formula tree; a link
// joins a dual pair. Both a cut-free net and a derivation induce one, and
// comparing the two readings is a cheap semantic check.

#include "exnet/derivation.hpp"
#include "exnet/net.hpp"

namespace exnet {

struct NLink {
  SeqPos pos;  // the positive atom occurrence
  SeqPos neg;

  bool operator==(const NLink& o) const { return pos == o.pos && neg == o.neg; }
  bool operator<(const NLink& o) const {
    if (!(pos == o.pos)) return pos < o.pos;
    return neg < o.neg;
  }
};

struct NNet {
  Sequent seq;
  std::vector<NLink> links;  // kept sorted
};

// Reads the linking off a cut-free typed forest: each dual wire pair links
// the atom occurrences reached by walking from the wires to their roots.
NNet extract_nnet(const TypedForest& f);

// Reads the linking off a cut-free derivation by transporting each axiom's
// link down through the rules below it.
NNet nnet_of_derivation(const Deriv& d);

bool nnet_equal(const NNet& a, const NNet& b);

std::string print_nnet(const NNet& n);

}  // namespace exnet
