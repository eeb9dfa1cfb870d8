#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cleave/error.hpp"
#include "cleave/homology.hpp"
#include "cleave/nerves.hpp"
#include "cleave/parser.hpp"
#include "cleave/spectral.hpp"
#include "cleave/verify.hpp"

namespace cleave {
namespace {

using nlohmann::json;

struct Options {
  std::string file, target, format = "text", coeff = "Z";
  std::vector<std::string> checks;
  int cap = 4;
  long long limit = 1000000;
  bool strict = true;
  int degree = -1; // -1: every guaranteed degree
  int fiber_degree = 0;
  int rmax = -1; // -1: cap + 2
};

int exit_code(const Error& e) {
  // input-side refusals; anything else is a failed verification
  static const char* input[] = {"SyntaxError",     "UnknownName",
                                "ValidationError", "DegreeAboveGuarantee",
                                "LimitExceeded",   "NotNormal",
                                "MissingComposite", "NonAssociative",
                                "BadIdentity",     "ObjectNotInCodomain",
                                "InvalidTwisting"};
  for (const char* k : input)
    if (e.kind() == k) return 2;
  return 1;
}

Workspace load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "ValidationError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

std::string kind_of(const Workspace& ws, const std::string& n) {
  for (const auto& [kind, name] : ws.order)
    if (name == n) return kind;
  return "";
}

[[noreturn]] void unknown(const Workspace& ws, const std::string& n,
                          const std::string& wanted) {
  std::string k = kind_of(ws, n);
  if (!k.empty() && k != wanted)
    fail("UnknownName", "'" + n + "' names a " + k + ", not a " + wanted);
  fail("UnknownName", "no " + wanted + " named '" + n + "'");
}

std::string classify(FibClass c) {
  switch (c) {
    case FibClass::Fibration: return "a fibration";
    case FibClass::Prefibration:
      return "a prefibration (some lifts are not strongly cartesian)";
    default: return "not a prefibration";
  }
}

CatPtr pick_category(const Workspace& ws, const std::string& given) {
  if (!given.empty()) {
    auto it = ws.category.find(given);
    if (it == ws.category.end()) unknown(ws, given, "category");
    return it->second;
  }
  require(!ws.category.empty(), "ValidationError",
          "the file declares no category");
  if (ws.category.size() > 1) {
    std::string names;
    for (const auto& [n, c] : ws.category) names += (names.empty() ? "" : ", ") + n;
    fail("ValidationError", "several categories declared (" + names + "); name one");
  }
  return ws.category.begin()->second;
}

const Cleavage& pick_cleavage(const Workspace& ws, const std::string& given) {
  if (!given.empty()) {
    auto it = ws.cleavage.find(given);
    if (it == ws.cleavage.end()) unknown(ws, given, "cleavage");
    return it->second;
  }
  require(!ws.cleavage.empty(), "ValidationError",
          "the file declares no cleavage");
  if (ws.cleavage.size() > 1) {
    std::string names;
    for (const auto& [n, c] : ws.cleavage) names += (names.empty() ? "" : ", ") + n;
    fail("ValidationError", "several cleavages declared (" + names + "); name one");
  }
  return ws.cleavage.begin()->second;
}

struct Fib {
  const Functor* p = nullptr;
  CertPtr cert;
};

Fib pick_fibration(const Workspace& ws, const std::string& given) {
  if (!given.empty()) {
    auto it = ws.functor.find(given);
    if (it == ws.functor.end()) unknown(ws, given, "functor");
    CertPtr c = certify_fibration(it->second);
    require(c->is_fibration(), "ValidationError",
            "functor '" + given + "' is " + classify(c->cls) +
                ", not a fibration");
    return {&it->second, c};
  }
  std::vector<Fib> hits;
  std::string names;
  for (const auto& [n, f] : ws.functor) {
    CertPtr c = certify_fibration(f);
    if (c->is_fibration()) {
      hits.push_back({&f, c});
      names += (names.empty() ? "" : ", ") + n;
    }
  }
  require(!hits.empty(), "ValidationError", "the file declares no fibration");
  require(hits.size() == 1, "ValidationError",
          "several fibrations declared (" + names + "); name one");
  return hits[0];
}

std::string guarantee_note(int cap) {
  return "(guaranteed: degree <= " + std::to_string(cap - 1) + " at cap " +
         std::to_string(cap) + ")";
}

std::string unguaranteed_note(int cap) {
  return "(NOT guaranteed: cap " + std::to_string(cap) +
         " truncates above degree " + std::to_string(cap - 1) + ")";
}

void gate_degree(int n, int cap, bool strict, const char* what) {
  if (strict && n >= cap)
    fail("DegreeAboveGuarantee",
         std::string(what) + " " + std::to_string(n) +
             " is not guaranteed at cap " + std::to_string(cap) +
             "; raise --cap or pass --no-strict-degrees");
}

// degrees a homology-style command reports
std::vector<int> pick_degrees(const Options& o) {
  if (o.degree >= 0) {
    gate_degree(o.degree, o.cap, o.strict, "degree");
    return {o.degree};
  }
  std::vector<int> d;
  for (int n = 0; n < o.cap; ++n) d.push_back(n);
  return d;
}

std::string field_group_str(const Coeff& k, long long dim) {
  if (dim == 0) return "0";
  if (dim == 1) return k.to_string();
  return k.to_string() + "^" + std::to_string(dim);
}

void emit(const Options& o, std::ostream& out, const std::string& text,
          const json& doc) {
  if (o.format == "structured")
    out << doc.dump(2) << "\n";
  else
    out << text;
}

void guard_size(long long total, long long limit) {
  require(total <= limit, "LimitExceeded",
          std::to_string(total) + " cells enumerated, limit is " +
              std::to_string(limit) + "; raise --limit");
}

void grid_table(std::ostream& out,
                const std::vector<std::vector<long long>>& dim) {
  int mtop = static_cast<int>(dim.size()) - 1;
  int ntop = mtop < 0 ? -1 : static_cast<int>(dim[0].size()) - 1;
  int w = 4;
  for (const auto& row : dim)
    for (long long v : row)
      w = std::max(w, static_cast<int>(std::to_string(v).size()) + 2);
  for (int m = mtop; m >= 0; --m) {
    out << " m=" << std::setw(2) << std::left << m << std::right << " |";
    for (int n = 0; n <= ntop; ++n) out << std::setw(w) << dim[m][n];
    out << "\n";
  }
  out << "      +" << std::string(static_cast<size_t>(w) * (ntop + 1), '-')
      << "\n"
      << "     n ";
  for (int n = 0; n <= ntop; ++n) out << std::setw(w) << n;
  out << "\n";
}

std::vector<std::vector<long long>> bis_sizes(const BiPtr& b, int cap) {
  std::vector<std::vector<long long>> g(cap + 1,
                                        std::vector<long long>(cap + 1, 0));
  for (int m = 0; m <= cap; ++m)
    for (int n = 0; n <= cap; ++n) g[m][n] = b->size(m, n);
  return g;
}

// ---- check ---------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  std::vector<std::pair<std::string, std::string>> wanted;
  if (o.checks.empty()) {
    wanted = ws.order;
  } else {
    for (const auto& t : o.checks) {
      std::string k = kind_of(ws, t);
      if (k.empty()) unknown(ws, t, "declaration");
      if (std::none_of(wanted.begin(), wanted.end(),
                       [&](const auto& p) { return p.second == t; }))
        wanted.emplace_back(k, t);
    }
  }

  std::ostringstream text;
  json ents = json::array();
  text << "workspace '" << o.file << "': " << ws.category.size()
       << " categories, " << ws.functor.size() << " functors, "
       << ws.cleavage.size() << " cleavages, " << ws.diagram.size()
       << " diagrams, " << ws.action.size() << " actions\n";
  for (const auto& [kind, name] : wanted) {
    json e{{"kind", kind}, {"name", name}};
    if (kind == "category") {
      const auto& c = ws.category.at(name);
      text << "category " << name << ": " << c->objects() << " objects, "
           << c->arrows() << " arrows\n";
      e["objects"] = c->objects();
      e["arrows"] = c->arrows();
    } else if (kind == "functor") {
      const Functor& f = ws.functor.at(name);
      CertPtr cert = certify_fibration(f);
      text << "functor " << name << " : " << f.dom->name << " -> "
           << f.cod->name << ": " << classify(cert->cls) << "\n";
      e["dom"] = f.dom->name;
      e["cod"] = f.cod->name;
      e["classification"] = classify(cert->cls);
    } else if (kind == "cleavage") {
      const Cleavage& c = ws.cleavage.at(name);
      bool closed = is_closed(c);
      text << "cleavage " << name << " on " << c.cert->p.name << ": normal, "
           << (closed ? "closed (a splitting)" : "not closed") << "\n";
      e["on"] = c.cert->p.name;
      e["normal"] = true;
      e["closed"] = closed;
    } else if (kind == "diagram") {
      const DiagramOfCategories& z = ws.diagram.at(name);
      text << "diagram " << name << " on " << z.base->name << ": "
           << z.base->objects() << " values\n";
      e["base"] = z.base->name;
      e["values"] = z.base->objects();
    } else if (kind == "action") {
      const CatGroupAction& a = ws.action.at(name);
      text << "action " << name << ": group of order " << a.group->arrows()
           << " acting on " << a.cat->name << "\n";
      e["group_order"] = a.group->arrows();
      e["on"] = a.cat->name;
    }
    ents.push_back(e);
  }
  text << "all declarations valid\n";
  emit(o, out, text.str(),
       json{{"command", "check"},
            {"entities", ents},
            {"file", o.file},
            {"valid", true}});
  return 0;
}

// ---- nerve ---------------------------------------------------------------

int cmd_nerve(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  CatPtr c = pick_category(ws, o.target);
  SSPtr x = nerve(c, o.cap);
  long long total = 0;
  for (int n = 0; n <= o.cap; ++n) total += x->size(n);
  guard_size(total, o.limit);

  std::ostringstream text;
  json levels = json::array();
  text << "nerve of '" << c->name << "' at cap " << o.cap << "\n";
  for (int n = 0; n <= o.cap; ++n) {
    long long nd = 0;
    for (int i = 0; i < x->size(n); ++i)
      if (!x->degenerate[n][i]) ++nd;
    text << "level " << n << ": " << x->size(n) << " cells (" << nd
         << " nondegenerate)\n";
    levels.push_back(
        json{{"cells", x->size(n)}, {"n", n}, {"nondegenerate", nd}});
  }
  emit(o, out, text.str(),
       json{{"cap", o.cap},
            {"category", c->name},
            {"command", "nerve"},
            {"levels", levels}});
  return 0;
}

// ---- fibred-nerve / cleaved-nerve ------------------------------------------

long long grid_total(const std::vector<std::vector<long long>>& g) {
  long long t = 0;
  for (const auto& r : g)
    for (long long v : r) t += v;
  return t;
}

int cmd_fibred_nerve(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  Fib fib = pick_fibration(ws, o.target);
  FibredNerve nf = fibred_nerve(fib.cert, o.cap);
  auto sizes = bis_sizes(nf.bis, o.cap);
  guard_size(grid_total(sizes), o.limit);
  SSPtr diag = diagonal(nf.bis);

  std::ostringstream text;
  text << "fibred nerve of '" << fib.p->name << "' at cap " << o.cap
       << " (rows: fiber degree m, columns: base degree n)\n";
  grid_table(text, sizes);
  json dsz = json::array();
  text << "diagonal:";
  for (int n = 0; n <= o.cap; ++n) {
    text << " " << diag->size(n);
    dsz.push_back(diag->size(n));
  }
  text << "\n";
  emit(o, out, text.str(),
       json{{"cap", o.cap},
            {"command", "fibred-nerve"},
            {"diagonal", dsz},
            {"functor", fib.p->name},
            {"sizes", sizes}});
  return 0;
}

int cmd_cleaved_nerve(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  const Cleavage& c = pick_cleavage(ws, o.target);
  CleavedNerve cn = cleaved_nerve(c, o.cap);
  auto sizes = bis_sizes(cn.bis, o.cap);
  guard_size(grid_total(sizes), o.limit);
  SSPtr diag = diagonal(cn.bis);
  bool closed = is_closed(c);

  std::ostringstream text;
  text << "cleaved nerve of '" << c.name << "' (on " << c.cert->p.name
       << ") at cap " << o.cap
       << " (rows: fiber degree m, columns: base degree n)\n"
       << "cleavage is " << (closed ? "closed" : "not closed") << "\n";
  grid_table(text, sizes);
  json dsz = json::array();
  text << "diagonal:";
  for (int n = 0; n <= o.cap; ++n) {
    text << " " << diag->size(n);
    dsz.push_back(diag->size(n));
  }
  text << "\n";
  emit(o, out, text.str(),
       json{{"cap", o.cap},
            {"cleavage", c.name},
            {"closed", closed},
            {"command", "cleaved-nerve"},
            {"diagonal", dsz},
            {"on", c.cert->p.name},
            {"sizes", sizes}});
  return 0;
}

// ---- homology --------------------------------------------------------------

int cmd_homology(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  CatPtr c = pick_category(ws, o.target);
  Coeff k = parse_coeff(o.coeff);
  std::vector<int> degs = pick_degrees(o);
  NormalizedChains ch = normalized_chain_complex(nerve(c, o.cap));

  std::ostringstream text;
  json groups = json::array();
  text << "homology of the nerve of '" << c->name << "' at cap " << o.cap
       << ", coefficients " << k.to_string() << "\n";
  for (int n : degs) {
    std::string g = k.kind == Coeff::Z
                        ? homology(ch.cx, n).to_string()
                        : field_group_str(k, homology_over_field(ch.cx, n, k));
    bool ok = n < o.cap;
    text << "H" << n << " = " << g << "  "
         << (ok ? guarantee_note(o.cap) : unguaranteed_note(o.cap)) << "\n";
    groups.push_back(json{{"degree", n}, {"group", g}, {"guaranteed", ok}});
  }
  emit(o, out, text.str(),
       json{{"cap", o.cap},
            {"category", c->name},
            {"coeff", k.to_string()},
            {"command", "homology"},
            {"groups", groups}});
  return 0;
}

// ---- coeff-homology --------------------------------------------------------

int cmd_coeff_homology(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  const Cleavage& c = pick_cleavage(ws, o.target);
  Coeff k = parse_coeff(o.coeff);
  gate_degree(o.fiber_degree, o.cap, o.strict, "fiber degree");
  std::vector<int> degs = pick_degrees(o);
  const std::string base = c.cert->base().name;
  const int m = o.fiber_degree;

  std::vector<long long> fdim;
  CatModule mod;
  if (k.is_field())
    fdim = field_module_homology(field_fiber_module(c, m, o.cap, k), o.cap);
  else
    mod = fiber_homology_module(c, m, o.cap);

  std::ostringstream text;
  json groups = json::array();
  text << "homology of '" << base << "' with coefficients in H" << m
       << " of the fibers of '" << c.name << "' (cap " << o.cap << ", "
       << k.to_string() << ")\n";
  for (int n : degs) {
    std::string g =
        k.is_field()
            ? field_group_str(
                  k, n < static_cast<int>(fdim.size()) ? fdim[n] : 0)
            : coefficient_homology(mod, o.cap, n).to_string();
    bool ok = n < o.cap && m < o.cap;
    text << "H" << n << "(" << base << "; H" << m << " fiber) = " << g << "  "
         << (ok ? guarantee_note(o.cap) : unguaranteed_note(o.cap)) << "\n";
    groups.push_back(json{{"degree", n}, {"group", g}, {"guaranteed", ok}});
  }
  emit(o, out, text.str(),
       json{{"base", base},
            {"cap", o.cap},
            {"cleavage", c.name},
            {"coeff", k.to_string()},
            {"command", "coeff-homology"},
            {"fiber_degree", m},
            {"groups", groups}});
  return 0;
}

// ---- spectral ----------------------------------------------------------------

int cmd_spectral(const Options& o, std::ostream& out) {
  Workspace ws = load(o.file);
  Fib fib = pick_fibration(ws, o.target);
  Coeff k = parse_coeff(o.coeff);
  require(k.is_field(), "ValidationError",
          "spectral pages need a field; pass --coeff Q or --coeff F<p>");
  int rmax = o.rmax < 0 ? o.cap + 2 : o.rmax;

  FibredNerve nf = fibred_nerve(fib.cert, o.cap);
  Bicomplex bc = fibration_bicomplex(nf);
  SpectralSequence ss = spectral_sequence(bc, k, rmax);

  std::ostringstream text;
  json pages = json::array();
  text << "spectral sequence of '" << fib.p->name << "' over " << k.to_string()
       << " at cap " << o.cap << " (filtration by base degree)\n";
  int shown = std::min<int>(ss.stable_at, static_cast<int>(ss.pages.size()));
  for (int i = 0; i < shown; ++i) {
    const SpectralPage& pg = ss.pages[i];
    text << "page " << pg.r << " (rows: fiber degree m, columns: base degree n)\n";
    grid_table(text, pg.dim);
    pages.push_back(json{{"dim", pg.dim}, {"r", pg.r}});
  }
  text << "stable from page " << ss.stable_at << " (checked to page " << rmax
       << ")\n";

  json einf = json::array(), tot = json::array();
  text << "E-infinity totals:";
  for (int d = 0; d < o.cap; ++d) {
    text << " d=" << d << ": " << ss.einf_total[d];
    einf.push_back(ss.einf_total[d]);
  }
  text << "  " << guarantee_note(o.cap) << "\n";
  text << "total homology:   ";
  for (int d = 0; d < o.cap; ++d) {
    text << " d=" << d << ": " << ss.tot_dim[d];
    tot.push_back(ss.tot_dim[d]);
  }
  text << "  " << guarantee_note(o.cap) << "\n";
  text << "CONVERGED\n";
  emit(o, out, text.str(),
       json{{"cap", o.cap},
            {"coeff", k.to_string()},
            {"command", "spectral"},
            {"converged", true},
            {"einf_totals", einf},
            {"functor", fib.p->name},
            {"pages", pages},
            {"rmax", rmax},
            {"stable_at", ss.stable_at},
            {"total_dims", tot}});
  return 0;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<CheckResult> res = run_verify(o.checks, /*concurrent=*/true);
  size_t width = 0;
  for (const auto& r : res) width = std::max(width, r.name.size());
  bool all = true;

  std::ostringstream text;
  json checks = json::array();
  for (const auto& r : res) {
    all = all && r.pass;
    text << "check " << r.name << std::string(width - r.name.size(), ' ')
         << (r.pass ? " PASS" : " FAIL") << "\n";
    for (const auto& line : r.detail) text << "    " << line << "\n";
    checks.push_back(json{{"detail", r.detail}, {"name", r.name}, {"pass", r.pass}});
  }
  size_t failed = 0;
  for (const auto& r : res)
    if (!r.pass) ++failed;
  text << res.size() << " checks run: "
       << (all ? "all pass" : std::to_string(failed) + " FAILED") << "\n";
  emit(o, out, text.str(),
       json{{"all_pass", all}, {"checks", checks}, {"command", "verify"}});
  return all ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Options o;
  CLI::App app{"exact nerves, cleavages, and homology for finite fibred categories",
               "cleave"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* s, bool wants_file) {
    if (wants_file)
      s->add_option("file", o.file, "declarations to load")->required();
    s->add_option("--cap", o.cap, "largest stored simplicial degree")
        ->capture_default_str()
        ->check(CLI::Range(1, 10));
    s->add_option("--coeff,--field", o.coeff, "coefficients: Z, Q, or F<p>")
        ->capture_default_str();
    s->add_option("--limit", o.limit, "enumeration bound on reported cells")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    s->add_option("--format", o.format, "report format")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "structured"}));
    s->add_flag("--strict-degrees,!--no-strict-degrees", o.strict,
                "refuse degrees the cap does not guarantee (default on)");
    return s;
  };

  CLI::App* check = common(app.add_subcommand(
      "check", "validate a file and classify its declarations"), true);
  check->add_option("targets", o.checks, "declarations to report (default: all)");

  CLI::App* nerv = common(app.add_subcommand(
      "nerve", "level sizes of a category's nerve"), true);
  nerv->add_option("target", o.target, "category (default: the only one)");

  CLI::App* fnerv = common(app.add_subcommand(
      "fibred-nerve", "bisimplicial sizes of the fibred nerve"), true);
  fnerv->add_option("target", o.target, "fibration functor (default: the only one)");

  CLI::App* cnerv = common(app.add_subcommand(
      "cleaved-nerve", "bisimplicial sizes of the cleaved nerve"), true);
  cnerv->add_option("target", o.target, "cleavage (default: the only one)");

  CLI::App* hom = common(app.add_subcommand(
      "homology", "homology of a category's nerve"), true);
  hom->add_option("target", o.target, "category (default: the only one)");
  hom->add_option("--degree", o.degree, "single degree to report")
      ->check(CLI::NonNegativeNumber);

  CLI::App* chom = common(app.add_subcommand(
      "coeff-homology", "base homology with fiber-homology coefficients"), true);
  chom->add_option("target", o.target, "cleavage (default: the only one)");
  chom->add_option("--degree", o.degree, "single degree to report")
      ->check(CLI::NonNegativeNumber);
  chom->add_option("--fiber-degree", o.fiber_degree,
                   "fiber homology degree for the coefficients")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  CLI::App* spec = common(app.add_subcommand(
      "spectral", "pages of the base-degree spectral sequence (field coefficients)"),
      true);
  spec->add_option("target", o.target, "fibration functor (default: the only one)");
  spec->add_option("--rmax", o.rmax, "last page to compute (default: cap + 2)")
      ->check(CLI::PositiveNumber);

  CLI::App* ver = common(app.add_subcommand(
      "verify", "run the built-in theorem batteries (fixed fixtures and caps)"),
      false);
  ver->add_option("checks", o.checks, "battery names (default: all)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e, out, err);
    return c == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().at(0)->get_name();
  try {
    if (name == "check") return cmd_check(o, out);
    if (name == "nerve") return cmd_nerve(o, out);
    if (name == "fibred-nerve") return cmd_fibred_nerve(o, out);
    if (name == "cleaved-nerve") return cmd_cleaved_nerve(o, out);
    if (name == "homology") return cmd_homology(o, out);
    if (name == "coeff-homology") return cmd_coeff_homology(o, out);
    if (name == "spectral") return cmd_spectral(o, out);
    return cmd_verify(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace cleave
