#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crq/coherence.hpp"
#include "crq/errors.hpp"
#include "crq/parser.hpp"
#include "crq/propagation.hpp"
#include "crq/pvalidity.hpp"
#include "crq/report.hpp"

namespace {

using namespace crq;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Each --constraints formula names an impossible conjunction; the engine
// works with must-hold formulas, so negate.
std::vector<EventPtr> constraint_formulas(const std::vector<std::string>& forbidden) {
  std::vector<EventPtr> out;
  for (const auto& s : forbidden) out.push_back(ev_not(parse_event(s)));
  return out;
}

Rat parse_rat_arg(const std::string& s, const char* what) {
  auto r = parse_rational(s);
  if (!r) throw Error(std::string("malformed rational for ") + what + ": " + s);
  return *r;
}

// Compact label for a constituent: a single product of literals when the
// world set is a cube, otherwise a disjunction of minterms.
std::string constituent_label(const Constituent& c) {
  const auto& atoms = c.universe.atoms;
  const std::size_t k = atoms.size();
  std::uint32_t fixed_ones = c.masks.front(), fixed_mask = ~0u;
  for (auto m : c.masks) fixed_mask &= ~(m ^ c.masks.front());
  int free_count = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (!((fixed_mask >> i) & 1u)) ++free_count;
  if (c.masks.size() == (std::size_t(1) << free_count)) {
    std::string s;
    for (std::size_t i = 0; i < k; ++i) {
      if (!((fixed_mask >> i) & 1u)) continue;
      if (!s.empty()) s += " ";
      s += ((fixed_ones >> i) & 1u) ? atoms[i] : "!" + atoms[i];
    }
    return s.empty() ? "TRUE" : s;
  }
  std::string s;
  for (auto m : c.masks) {
    if (!s.empty()) s += " or ";
    std::string t;
    for (std::size_t i = 0; i < k; ++i) {
      if (!t.empty()) t += " ";
      t += ((m >> i) & 1u) ? atoms[i] : "!" + atoms[i];
    }
    s += t;
  }
  return s;
}

int run_check(const std::string& file, const std::vector<std::string>& forbidden,
              bool records) {
  auto constraints = constraint_formulas(forbidden);
  Elaborated el = elaborate(parse_bindings(read_file(file)), constraints);
  if (el.target) throw Error("'= ?' target not allowed in check; use extend");

  CoherenceResult r = check_coherence(el.assessment, true);
  std::cout << (r.coherent ? "coherent" : "incoherent") << "\n";
  for (const auto& level : r.trace) {
    if (level.shortcut || level.i0.empty()) continue;
    std::cout << "  recursion: I0 = {";
    for (std::size_t i = 0; i < level.i0.size(); ++i)
      std::cout << (i ? ", " : "") << r.labels[level.i0[i]];
    std::cout << "}\n";
  }
  if (!r.coherent && r.witness) {
    std::cout << "dutch book stakes:\n";
    for (std::size_t i = 0; i < r.witness->objects.size(); ++i)
      std::cout << "  " << r.labels[r.witness->objects[i]] << ": "
                << to_string(r.witness->stakes[i]) << "\n";
  }
  if (records) {
    Record rec;
    rec.command = "check";
    rec.set("inputs", file).set("verdict", r.coherent ? "coherent" : "incoherent");
    if (r.witness) {
      rec.set("witness.stakes", r.witness->stakes);
      std::string objs;
      for (std::size_t i = 0; i < r.witness->objects.size(); ++i)
        objs += (i ? "," : "") + r.labels[r.witness->objects[i]];
      rec.set("witness.objects", objs);
    }
    std::cout << rec.to_json_line() << "\n";
  }
  return 0;
}

int run_extend(const std::string& file, const std::vector<std::string>& forbidden,
               const std::string& cap, const std::string& tol, bool records) {
  auto constraints = constraint_formulas(forbidden);
  Elaborated el = elaborate(parse_bindings(read_file(file)), constraints);
  if (!el.target) throw Error("extend needs exactly one 'P(...) = ?' line");

  ExtensionOptions opt;
  if (!cap.empty()) opt.cap = parse_rat_arg(cap, "--cap");
  if (!tol.empty()) opt.tol = parse_rat_arg(tol, "--tol");
  ExtensionInterval iv = extension_interval(el.assessment, opt);
  std::cout << *el.target << " in " << iv.to_string() << "\n";
  if (records) {
    Record rec;
    rec.command = "extend";
    rec.set("inputs", file)
        .set("target", *el.target)
        .set("interval.lower", iv.lower)
        .set("interval.unbounded_above", iv.unbounded_above);
    if (!iv.unbounded_above) rec.set("interval.upper", iv.upper);
    std::cout << rec.to_json_line() << "\n";
  }
  return 0;
}

int run_table(const std::string& expr_text, const std::vector<std::string>& forbidden,
              bool records) {
  auto constraints = constraint_formulas(forbidden);
  AstPtr ast = parse(expr_text);
  CrqPtr obj = table_object(ast);

  // Context family: the operand conditionals refine the rows to the familiar
  // constituent granularity of the tables.
  std::vector<PartitionedObject> fam;
  std::function<void(const AstPtr&)> add_operands = [&](const AstPtr& node) {
    if (node->kind == Ast::Kind::Compound || node->kind == Ast::Kind::Iter) {
      add_operands(node->lhs);
      add_operands(node->rhs);
      return;
    }
    EventPtr cons = node->kind == Ast::Kind::Event ? node->event : node->consequent;
    EventPtr ante = node->kind == Ast::Kind::Event ? ev_true() : node->antecedent;
    PartitionedObject po;
    po.antecedent = ante;
    po.pieces = {ev_and(cons, ante), ev_and(ev_not(cons), ante)};
    fam.push_back(po);
  };
  add_operands(ast);
  fam.push_back(obj->partitioned());

  auto cs = constituents(fam, constraints);
  std::cout << print(ast) << "\n";
  for (const auto& c : cs) {
    std::uint32_t m = c.masks.front();
    AffineExpr value = obj->off_value;
    if (evaluate_mask(obj->conditioning, c.universe, m)) {
      for (const auto& [region, v] : obj->pieces)
        if (evaluate_mask(region, c.universe, m)) {
          value = v;
          break;
        }
    }
    std::string row = constituent_label(c) + " : " + value.to_string();
    std::cout << "  " << row << "\n";
    if (records) {
      Record rec;
      rec.command = "table";
      rec.set("inputs", expr_text)
          .set("constituent", constituent_label(c))
          .set("value", value.to_string());
      std::cout << rec.to_json_line() << "\n";
    }
  }
  return 0;
}

int run_suite(bool records) {
  auto table = property_suite();
  const char* props[] = {"no_IE", "P1", "P2", "P3", "P4"};
  std::cout << "operator  no_IE  P1  P2  P3  P4\n";
  for (OperatorKind kind : {OperatorKind::C, OperatorKind::dF, OperatorKind::F,
                            OperatorKind::K, OperatorKind::L, OperatorKind::B,
                            OperatorKind::S, OperatorKind::gs}) {
    std::string row = to_string(kind);
    row.resize(10, ' ');
    for (const char* p : props) {
      for (const auto& v : table)
        if (v.operator_kind == kind && v.property == p) {
          std::string cell = v.holds ? "yes" : "-";
          cell.resize(p == std::string("no_IE") ? 7 : 4, ' ');
          row += cell;
        }
    }
    std::cout << row << "\n";
  }
  for (const auto& v : table) {
    if (v.holds || !v.counterexample) continue;
    std::cout << "  " << v.property << "/" << to_string(v.operator_kind)
              << " counterexample:";
    for (const auto& obj : v.counterexample->family)
      std::cout << " P(" << obj->label
                << ")=" << to_string(v.counterexample->values.at(obj->prevision.name));
    std::cout << "\n";
  }
  LewisTriviality lewis = lewis_triviality_demo();
  std::cout << "import-export + total probability collapse (Lewis-style): "
            << (lewis.collapse_exhibited ? "exhibited" : "not exhibited") << "\n";
  for (const auto& row : lewis.rows)
    std::cout << "  P(C)=" << to_string(row.p) << " forces P(C|A)=" << to_string(row.forced)
              << ", yet P(C|A)=" << to_string(row.alternative) << " is coherent\n";
  if (records) {
    for (const auto& v : table) {
      Record rec;
      rec.command = "suite";
      rec.set("operator", to_string(v.operator_kind))
          .set("property", v.property)
          .set("verdict", v.holds);
      std::cout << rec.to_json_line() << "\n";
    }
  }
  return 0;
}

int run_pvalid(const std::string& rule_name, const std::string& kind_name, bool records) {
  InferenceRule rule;
  if (rule_name == "modus_ponens" || rule_name == "mp")
    rule = InferenceRule::modus_ponens;
  else if (rule_name == "centering")
    rule = InferenceRule::centering;
  else
    throw Error("unknown rule: " + rule_name + " (modus_ponens|centering)");
  auto kind = operator_kind_from_string(kind_name);
  if (!kind) throw Error("unknown operator kind: " + kind_name);

  Verdict v = check_inference(rule, *kind);
  std::cout << to_string(rule) << " with iter_" << kind_name << ": "
            << (v.holds ? "p-valid" : "not p-valid") << "\n";
  if (v.counterexample) {
    std::cout << "  counterexample:";
    for (const auto& obj : v.counterexample->family)
      std::cout << " P(" << obj->label
                << ")=" << to_string(v.counterexample->values.at(obj->prevision.name));
    std::cout << "\n";
  }
  if (records) {
    Record rec;
    rec.command = "pvalid";
    rec.set("inputs", rule_name + " " + kind_name).set("verdict", v.holds);
    std::cout << rec.to_json_line() << "\n";
  }
  return 0;
}

int run_bounds(const std::string& kind_name, int grid_n, const std::string& tol,
               bool records) {
  auto kind = bound_kind_from_string(kind_name);
  if (!kind) throw Error("unknown bound kind: " + kind_name);
  Rat tolerance = tol.empty() ? Rat(1, 1000000) : parse_rat_arg(tol, "--tol");

  std::vector<std::pair<Rat, Rat>> grid;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j)
      grid.emplace_back(rat(i, grid_n - 1), rat(j, grid_n - 1));

  BoundReport report = verify_bounds_match(*kind, grid, tolerance);
  std::cout << to_string(*kind) << ": " << report.points_checked << " grid points, "
            << report.failures.size() << " failures\n";
  for (const auto& f : report.failures)
    std::cout << "  (x,y)=(" << to_string(f.x) << "," << to_string(f.y)
              << ") searched " << f.searched.to_string() << " formula "
              << f.formula.to_string() << "\n";
  if (records) {
    Record rec;
    rec.command = "bounds";
    rec.set("inputs", kind_name)
        .set("verdict", report.ok())
        .set("points", std::to_string(report.points_checked))
        .set("failures", std::to_string(report.failures.size()));
    std::cout << rec.to_json_line() << "\n";
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact coherence checking for conditional random quantities"};
  app.require_subcommand(1);

  std::string file, expr, rule, kind, cap, tol;
  std::vector<std::string> forbidden;
  bool records = false;
  int grid_n = 5;

  auto* check = app.add_subcommand("check", "coherence of an assessment file");
  check->add_option("file", file)->required();
  check->add_option("--constraints", forbidden, "impossible conjunction, e.g. \"A & !K\"");
  check->add_flag("--records", records, "emit machine-readable records");

  auto* extend = app.add_subcommand("extend", "coherent extension interval of the '?' target");
  extend->add_option("file", file)->required();
  extend->add_option("--constraints", forbidden);
  extend->add_option("--cap", cap, "unbounded-detection cap (default 2^20)");
  extend->add_option("--tol", tol, "bisection tolerance (default 1e-9)");
  extend->add_flag("--records", records);

  auto* table = app.add_subcommand("table", "per-constituent value table of an expression");
  table->add_option("expr", expr)->required();
  table->add_option("--constraints", forbidden);
  table->add_flag("--records", records);

  auto* suite = app.add_subcommand("suite", "property table for all iterated conditionals");
  suite->add_flag("--records", records);

  auto* pvalid = app.add_subcommand("pvalid", "p-validity of an inference rule");
  pvalid->add_option("rule", rule, "modus_ponens|centering")->required();
  pvalid->add_option("kind", kind, "C|dF|F|K|L|gs")->required();
  pvalid->add_flag("--records", records);

  auto* bounds = app.add_subcommand("bounds", "search vs closed-form bound verification");
  bounds->add_option("kind", kind)->required();
  bounds->add_option("--grid", grid_n, "grid points per axis (default 5)");
  bounds->add_option("--tol", tol, "comparison tolerance (default 1e-6)");
  bounds->add_flag("--records", records);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(file, forbidden, records);
    if (extend->parsed()) return run_extend(file, forbidden, cap, tol, records);
    if (table->parsed()) return run_table(expr, forbidden, records);
    if (suite->parsed()) return run_suite(records);
    if (pvalid->parsed()) return run_pvalid(rule, kind, records);
    if (bounds->parsed()) return run_bounds(kind, grid_n, tol, records);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
