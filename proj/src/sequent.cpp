#include "exnet/sequent.hpp"

#include <algorithm>
#include <set>

namespace exnet {

Formula formula_at(const Sequent& s, const SeqPos& pos) {
  require(pos.root >= 0 && pos.root < static_cast<int>(s.roots.size()),
          "formula_at: root index out of range");
  Formula f = s.roots[pos.root];
  for (int step : pos.path) {
    require(f->kind == FKind::And || f->kind == FKind::Or,
            "formula_at: path descends into a leaf");
    require(step == 0 || step == 1, "formula_at: bad path step");
    f = step == 0 ? f->left : f->right;
  }
  return f;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s.roots[i]);
  }
  return out;
}

Sequent parse_sequent(const std::string& text) {
  Sequent s;
  std::size_t start = 0;
  int depth = 0;
  auto flush = [&](std::size_t end) {
    std::string piece = text.substr(start, end - start);
    std::size_t a = piece.find_first_not_of(" \t\n");
    if (a == std::string::npos) throw ParseError("empty entry in sequent");
    s.roots.push_back(parse_formula(piece));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  if (text.find_first_not_of(" \t\n") == std::string::npos)
    return s;
  flush(text.size());
  return s;
}

bool sequent_equal(const Sequent& a, const Sequent& b) {
  if (a.roots.size() != b.roots.size()) return false;
  for (std::size_t i = 0; i < a.roots.size(); ++i)
    if (!formula_equal(a.roots[i], b.roots[i])) return false;
  return true;
}

bool is_subsequent(const Sequent& a, const Sequent& b) {
  std::vector<bool> used(b.roots.size(), false);
  for (const Formula& f : a.roots) {
    bool found = false;
    for (std::size_t j = 0; j < b.roots.size(); ++j) {
      if (!used[j] && formula_equal(f, b.roots[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool sequent_equal_multiset(const Sequent& a, const Sequent& b) {
  return a.roots.size() == b.roots.size() && is_subsequent(a, b);
}

bool is_subforest_closed(const Sequent& s, const std::vector<SeqPos>& occurrences) {
  std::set<SeqPos> have(occurrences.begin(), occurrences.end());
  for (const SeqPos& pos : occurrences) {
    Formula f = formula_at(s, pos);
    if (f->kind == FKind::And || f->kind == FKind::Or) {
      for (int step : {0, 1}) {
        SeqPos kid = pos;
        kid.path.push_back(step);
        if (!have.count(kid)) return false;
      }
    }
  }
  return true;
}

Sequent remove_roots(const Sequent& s, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  require(std::adjacent_find(positions.begin(), positions.end()) == positions.end(),
          "remove_roots: duplicate positions");
  Sequent out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    if (next < positions.size() && static_cast<std::size_t>(positions[next]) == i) {
      ++next;
      continue;
    }
    out.roots.push_back(s.roots[i]);
  }
  require(next == positions.size(), "remove_roots: position out of range");
  return out;
}

}  // namespace exnet
