#include "exnet/nnet.hpp"

#include <algorithm>
#include <map>

#include "exnet/formula.hpp"

namespace exnet {
namespace {

NLink orient(const Sequent& s, const SeqPos& a, const SeqPos& b) {
  Formula fa = formula_at(s, a);
  require(fa->kind == FKind::AtomF, "nnet: link endpoint is not an atom");
  return fa->atom.neg ? NLink{b, a} : NLink{a, b};
}

SeqPos prefixed(int root, int step, const SeqPos& old) {
  SeqPos p;
  p.root = root;
  p.path.push_back(step);
  p.path.insert(p.path.end(), old.path.begin(), old.path.end());
  return p;
}

using RawLink = std::pair<SeqPos, SeqPos>;

std::vector<RawLink> trace(const Deriv& d) {
  auto shift1 = [](int i, int a) { return i - (a < i ? 1 : 0); };
  auto shift2 = [&](int i, int a, int b) { return shift1(shift1(i, std::max(a, b)), std::min(a, b)); };

  std::vector<RawLink> out;
  switch (d->rule) {
    case Rule::Ax: {
      SeqPos x{0, {}};
      SeqPos y{1, {}};
      out.push_back({x, y});
      break;
    }
    case Rule::AxTop:
      break;
    case Rule::Or: {
      int n = static_cast<int>(d->premises[0]->conclusion.roots.size());
      int princ = n - 2;
      auto move = [&](const SeqPos& p) {
        if (p.root == d->pos_a) return prefixed(princ, 0, p);
        if (p.root == d->pos_b) return prefixed(princ, 1, p);
        return SeqPos{shift2(p.root, d->pos_a, d->pos_b), p.path};
      };
      for (const RawLink& l : trace(d->premises[0])) out.push_back({move(l.first), move(l.second)});
      break;
    }
    case Rule::Or0:
    case Rule::Or1: {
      bool left = d->rule == Rule::Or0;
      int active = left ? d->pos_a : d->pos_b;
      int princ = static_cast<int>(d->premises[0]->conclusion.roots.size()) - 1;
      auto move = [&](const SeqPos& p) {
        if (p.root == active) return prefixed(princ, left ? 0 : 1, p);
        return SeqPos{shift1(p.root, active), p.path};
      };
      for (const RawLink& l : trace(d->premises[0])) out.push_back({move(l.first), move(l.second)});
      break;
    }
    case Rule::And: {
      int nl = static_cast<int>(d->premises[0]->conclusion.roots.size());
      int nr = static_cast<int>(d->premises[1]->conclusion.roots.size());
      int princ = nl - 1 + nr - 1;
      auto move_l = [&](const SeqPos& p) {
        if (p.root == d->pos_a) return prefixed(princ, 0, p);
        return SeqPos{shift1(p.root, d->pos_a), p.path};
      };
      auto move_r = [&](const SeqPos& p) {
        if (p.root == d->pos_b) return prefixed(princ, 1, p);
        return SeqPos{nl - 1 + shift1(p.root, d->pos_b), p.path};
      };
      for (const RawLink& l : trace(d->premises[0])) out.push_back({move_l(l.first), move_l(l.second)});
      for (const RawLink& l : trace(d->premises[1])) out.push_back({move_r(l.first), move_r(l.second)});
      break;
    }
    case Rule::Mix: {
      int nl = static_cast<int>(d->premises[0]->conclusion.roots.size());
      for (const RawLink& l : trace(d->premises[0])) out.push_back(l);
      for (const RawLink& l : trace(d->premises[1])) {
        auto move = [&](SeqPos p) {
          p.root += nl;
          return p;
        };
        out.push_back({move(l.first), move(l.second)});
      }
      break;
    }
    case Rule::C: {
      int n = static_cast<int>(d->premises[0]->conclusion.roots.size());
      int princ = n - 2;
      auto move = [&](const SeqPos& p) {
        if (p.root == d->pos_a || p.root == d->pos_b) return SeqPos{princ, p.path};
        return SeqPos{shift2(p.root, d->pos_a, d->pos_b), p.path};
      };
      for (const RawLink& l : trace(d->premises[0])) out.push_back({move(l.first), move(l.second)});
      break;
    }
    default:
      throw ContractViolation("nnet: only cut-free derivations without weakening induce a linking");
  }

  if (!d->out_perm.empty()) {
    std::vector<int> inv(d->out_perm.size());
    for (std::size_t k = 0; k < d->out_perm.size(); ++k) inv[d->out_perm[k]] = static_cast<int>(k);
    for (RawLink& l : out) {
      l.first.root = inv[l.first.root];
      l.second.root = inv[l.second.root];
    }
  }
  return out;
}

}  // namespace

NNet extract_nnet(const TypedForest& f) {
  for (NodeId r : f.roots)
    require(f.node(r).kind != NodeKind::CutNode, "nnet: the forest still contains a cut");

  std::map<NodeId, NodeId> par = parents_of(f);
  std::map<NodeId, int> root_index;
  for (std::size_t i = 0; i < f.roots.size(); ++i) root_index[f.roots[i]] = static_cast<int>(i);

  std::map<NodeId, SeqPos> occ_of;
  std::map<std::string, std::vector<NodeId>> by_name;
  for (const auto& [id, n] : f.nodes) {
    if (n.kind != NodeKind::Wire) continue;
    SeqPos occ;
    NodeId cur = id;
    while (!root_index.count(cur)) {
      auto it = par.find(cur);
      require(it != par.end(), "nnet: wire not attached to any root");
      NodeId p = it->second;
      const NetNode& pn = f.node(p);
      if (pn.kind == NodeKind::OrNode || pn.kind == NodeKind::Tensor)
        occ.path.push_back(pn.kids[0] == cur ? 0 : 1);
      cur = p;
    }
    occ.root = root_index.at(cur);
    std::reverse(occ.path.begin(), occ.path.end());
    occ_of[id] = occ;
    by_name[n.wire.sym].push_back(id);
  }

  NNet out;
  out.seq = classical_sequent(f);
  for (const auto& [name, ids] : by_name) {
    (void)name;
    require(ids.size() == 2, "nnet: wire without a partner");
    NodeId a = ids[0];
    NodeId b = ids[1];
    if (f.node(a).wire.neg) std::swap(a, b);
    out.links.push_back(NLink{occ_of.at(a), occ_of.at(b)});
  }
  std::sort(out.links.begin(), out.links.end());
  return out;
}

NNet nnet_of_derivation(const Deriv& d) {
  NNet out;
  out.seq = d->conclusion;
  for (const RawLink& l : trace(d)) out.links.push_back(orient(out.seq, l.first, l.second));
  std::sort(out.links.begin(), out.links.end());
  return out;
}

bool nnet_equal(const NNet& a, const NNet& b) {
  if (a.seq.roots.size() != b.seq.roots.size() || a.links.size() != b.links.size()) return false;
  for (std::size_t i = 0; i < a.seq.roots.size(); ++i)
    if (!formula_equal(a.seq.roots[i], b.seq.roots[i])) return false;
  std::vector<NLink> la = a.links;
  std::vector<NLink> lb = b.links;
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  return la == lb;
}

std::string print_nnet(const NNet& n) {
  auto occ = [](const SeqPos& p) {
    std::string s = std::to_string(p.root) + ":";
    for (int step : p.path) s += static_cast<char>('0' + step);
    return s;
  };
  std::string out = print_sequent(n.seq);
  for (const NLink& l : n.links) out += "\n  " + occ(l.pos) + " ~ " + occ(l.neg);
  return out;
}

}  // namespace exnet
