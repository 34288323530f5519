// Command line front end for the expansion net library.
//
// Net files are plain text in the syntax of print_net / parse_net;
// derivation files are the JSON emitted by derivation_to_json. Exit
// status: 0 on success, 1 when a requested check answers no, 2 on a
// parse error, 3 when a library contract is violated.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "exnet/annotate.hpp"
#include "exnet/cutelim.hpp"
#include "exnet/derivation.hpp"
#include "exnet/dot.hpp"
#include "exnet/metatheory.hpp"
#include "exnet/net.hpp"
#include "exnet/netgraph.hpp"
#include "exnet/nnet.hpp"
#include "exnet/seq.hpp"
#include "exnet/subnet.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw exnet::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw exnet::ParseError("cannot open " + path + " for writing");
  out << text;
}

void print_ann_tree(std::ostream& os, const exnet::AnnDeriv& d, int depth) {
  for (const auto& p : d->premises) print_ann_tree(os, p, depth + 1);
  for (int i = 0; i < depth; ++i) os << "  ";
  os << exnet::arule_name(d->rule) << "  |- " << exnet::print_net(d->conclusion) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"expansion net toolbox"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;

  auto* check = app.add_subcommand("check", "verify correctness of a net");
  check->add_option("file", in_path, "net file, - for stdin")->required();
  bool oracle = false;
  check->add_flag("--oracle", oracle, "enumerate all switchings instead");
  bool quiet = false;
  check->add_flag("-q,--quiet", quiet, "status code only");

  auto* parse = app.add_subcommand("parse", "parse a net and echo its normal form");
  parse->add_option("file", in_path)->required();

  auto* seq = app.add_subcommand("seq", "sequentialize a net into a derivation");
  seq->add_option("file", in_path)->required();
  seq->add_option("-o,--out", out_path, "write derivation JSON here");
  bool seq_json = false;
  seq->add_flag("--json", seq_json, "emit derivation JSON on stdout");

  auto* deseq = app.add_subcommand("deseq", "build the net of a derivation");
  deseq->add_option("file", in_path)->required();

  auto* translate = app.add_subcommand("translate", "translate a derivation with weakening");
  translate->add_option("file", in_path)->required();
  translate->add_option("-o,--out", out_path, "write translated JSON here");

  auto* cutelim = app.add_subcommand("cutelim", "eliminate cuts from a net");
  cutelim->add_option("file", in_path)->required();
  bool trace = false;
  cutelim->add_flag("--trace", trace, "print every reduction step");
  long cut_id = -1;
  cutelim->add_option("--cut", cut_id, "eliminate only this topmost cut");

  auto* subnet = app.add_subcommand("subnet", "distinguished subnets of a node");
  subnet->add_option("file", in_path)->required();
  long node_id = -1;
  subnet->add_option("-n,--node", node_id, "node id")->required();
  std::string kind = "kingdom";
  subnet->add_option("-k,--kind", kind, "kingdom, empire or ce")
      ->check(CLI::IsMember({"kingdom", "empire", "ce"}));
  bool as_dot = false;
  subnet->add_flag("--dot", as_dot, "render the highlighted net instead");

  auto* render = app.add_subcommand("render", "emit the net in Graphviz dot syntax");
  render->add_option("file", in_path)->required();
  render->add_option("-o,--out", out_path);

  auto* nnet = app.add_subcommand("nnet", "print the axiom linking");
  nnet->add_option("file", in_path)->required();
  bool from_deriv = false;
  nnet->add_flag("-d,--derivation", from_deriv, "input is a derivation, not a net");

  CLI11_PARSE(app, argc, argv);

  if (*check) {
    exnet::TypedForest f = exnet::parse_net(read_input(in_path));
    bool ok = oracle ? exnet::ac_correct_bruteforce(f) : exnet::ac_correct_poly(f);
    if (!quiet) std::cout << (ok ? "correct" : "incorrect") << "\n";
    return ok ? 0 : 1;
  }
  if (*parse) {
    exnet::TypedForest f = exnet::parse_net(read_input(in_path));
    std::cout << exnet::print_net(f) << "\n";
    return 0;
  }
  if (*seq) {
    exnet::TypedForest f = exnet::parse_net(read_input(in_path));
    std::string why;
    auto d = exnet::try_sequentialize(f, &why);
    if (!d) {
      std::cout << "not sequentializable: " << why << "\n";
      return 1;
    }
    auto [plain, system] = exnet::strip_annotations(*d);
    if (!out_path.empty())
      write_output(out_path, exnet::derivation_to_json(plain, system));
    else if (seq_json)
      std::cout << exnet::derivation_to_json(plain, system) << "\n";
    else
      print_ann_tree(std::cout, *d, 0);
    return 0;
  }
  if (*deseq) {
    auto [d, system] = exnet::derivation_from_json(read_input(in_path));
    if (system == exnet::System::LK)
      throw exnet::ParseError("deseq expects a derivation without weakening; translate first");
    std::cout << exnet::print_net(exnet::desequentialize(d, system)) << "\n";
    return 0;
  }
  if (*translate) {
    auto [d, system] = exnet::derivation_from_json(read_input(in_path));
    (void)system;
    exnet::Deriv t = exnet::lk_to_lkstar(d);
    write_output(out_path, exnet::derivation_to_json(t, exnet::System::LKstar));
    return 0;
  }
  if (*cutelim) {
    exnet::TypedForest f = exnet::parse_net(read_input(in_path));
    exnet::Elimination e = cut_id >= 0
                               ? exnet::eliminate_cut(f, static_cast<exnet::NodeId>(cut_id))
                               : exnet::eliminate_all(f);
    if (trace) {
      int i = 0;
      for (const auto& step : e.trace)
        std::cout << "step " << ++i << ": " << exnet::redex_name(step.kind) << " at node "
                  << step.cut << "\n";
    }
    std::cout << exnet::print_net(e.net) << "\n";
    for (std::size_t i = 0; i < e.roots.size(); ++i)
      if (e.roots[i].closed)
        std::cout << "root " << i << " closes input root " << e.roots[i].from << "\n";
    return 0;
  }
  if (*subnet) {
    exnet::TypedForest f = exnet::parse_net(read_input(in_path));
    exnet::NodeId x = static_cast<exnet::NodeId>(node_id);
    std::set<exnet::NodeId> g;
    bool is_net = true;
    if (kind == "kingdom") {
      g = exnet::kingdom(f, x);
    } else if (kind == "ce") {
      g = exnet::contiguous_empire(f, x);
    } else {
      exnet::EmpireNote note = exnet::empire_note(f, x);
      g = note.nodes;
      is_net = note.subnet;
    }
    if (as_dot) {
      write_output("", exnet::to_dot(f, g));
      return 0;
    }
    std::cout << kind << "(" << x << ") =";
    for (exnet::NodeId v : g) std::cout << " " << v;
    std::cout << "\n" << (is_net ? "a subnet" : "not a subnet") << "\n";
    return 0;
  }
  if (*render) {
    exnet::TypedForest f = exnet::parse_net(read_input(in_path));
    write_output(out_path, exnet::to_dot(f));
    return 0;
  }
  if (*nnet) {
    exnet::NNet n;
    if (from_deriv) {
      auto [d, system] = exnet::derivation_from_json(read_input(in_path));
      (void)system;
      n = exnet::nnet_of_derivation(d);
    } else {
      n = exnet::extract_nnet(exnet::parse_net(read_input(in_path)));
    }
    std::cout << exnet::print_nnet(n);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const exnet::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const exnet::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  }
}
