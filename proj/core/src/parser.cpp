#include "cleave/parser.hpp"

#include <sstream>

#include "cleave/error.hpp"

namespace cleave {

namespace {

struct Token {
  std::string text;
  int col = 0; // 1-based
};

struct Line {
  int no = 0;
  bool indented = false;
  std::vector<Token> tok;
};

std::string at(const Line& ln, size_t i) {
  int col = i < ln.tok.size() ? ln.tok[i].col : (ln.tok.empty() ? 1 : ln.tok.back().col);
  return "line " + std::to_string(ln.no) + ", col " + std::to_string(col);
}

const std::string& want(const Line& ln, size_t i, const std::string& what) {
  require(i < ln.tok.size(), "SyntaxError", at(ln, i) + ": expected " + what);
  return ln.tok[i].text;
}

void want_lit(const Line& ln, size_t i, const std::string& lit) {
  require(i < ln.tok.size() && ln.tok[i].text == lit, "SyntaxError",
          at(ln, i) + ": expected '" + lit + "'");
}

void want_end(const Line& ln, size_t i) {
  if (i >= ln.tok.size()) return;
  fail("SyntaxError", at(ln, i) + ": unexpected '" + ln.tok[i].text + "'");
}

std::vector<Line> scan(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    Line ln;
    ln.no = no;
    ln.indented = !raw.empty() && (raw[0] == ' ' || raw[0] == '\t');
    size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      ln.tok.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!ln.tok.empty()) out.push_back(std::move(ln));
  }
  return out;
}

using Block = std::vector<Line>; // head first, then body

// rethrow validator refusals with the block's location attached
template <class F>
void located(const Line& head, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    std::string what = e.what();
    std::string prefix = e.kind() + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    if (what.rfind("line ", 0) == 0) throw; // already located
    fail(e.kind(), "line " + std::to_string(head.no) + ": " + what);
  }
}

class Parser {
 public:
  Workspace ws;

  void run(const std::string& text) {
    std::vector<Line> lines = scan(text);
    size_t i = 0;
    while (i < lines.size()) {
      require(!lines[i].indented, "SyntaxError",
              at(lines[i], 0) + ": body line outside any block");
      Block b{lines[i++]};
      while (i < lines.size() && lines[i].indented) b.push_back(lines[i++]);
      const std::string& kind = b[0].tok[0].text;
      if (kind == "category")
        parse_category(b);
      else if (kind == "functor")
        parse_functor(b);
      else if (kind == "cleavage")
        parse_cleavage(b);
      else if (kind == "diagram")
        parse_diagram(b);
      else if (kind == "action")
        parse_action(b);
      else
        fail("SyntaxError", at(b[0], 0) + ": unknown directive '" + kind + "'");
    }
  }

 private:
  std::string fresh(const Line& head, const std::string& kind) {
    const std::string& name = want(head, 1, kind + " name");
    bool dup = (kind == "category" && ws.category.count(name)) ||
               (kind == "functor" && ws.functor.count(name)) ||
               (kind == "cleavage" && ws.cleavage.count(name)) ||
               (kind == "diagram" && ws.diagram.count(name)) ||
               (kind == "action" && ws.action.count(name));
    require(!dup, "ValidationError",
            at(head, 1) + ": " + kind + " '" + name + "' is already defined");
    return name;
  }

  CatPtr find_category(const Line& ln, size_t i) {
    const std::string& n = want(ln, i, "category name");
    auto it = ws.category.find(n);
    require(it != ws.category.end(), "UnknownName",
            at(ln, i) + ": unknown category '" + n + "'");
    return it->second;
  }

  const Functor& find_functor(const Line& ln, size_t i) {
    const std::string& n = want(ln, i, "functor name");
    auto it = ws.functor.find(n);
    require(it != ws.functor.end(), "UnknownName",
            at(ln, i) + ": unknown functor '" + n + "'");
    return it->second;
  }

  int find_object(const Line& ln, size_t i, const FiniteCategory& c) {
    const std::string& n = want(ln, i, "object of " + c.name);
    auto x = c.object_index(n);
    require(x.has_value(), "UnknownName",
            at(ln, i) + ": no object '" + n + "' in category " + c.name);
    return *x;
  }

  int find_arrow(const Line& ln, size_t i, const FiniteCategory& c) {
    const std::string& n = want(ln, i, "arrow of " + c.name);
    auto x = c.arrow_index(n);
    require(x.has_value(), "UnknownName",
            at(ln, i) + ": no arrow '" + n + "' in category " + c.name);
    return *x;
  }

  void parse_category(const Block& b) {
    std::string name = fresh(b[0], "category");
    want_end(b[0], 2);
    CategoryBuilder cb(name);
    for (size_t i = 1; i < b.size(); ++i) {
      const Line& ln = b[i];
      const std::string& what = ln.tok[0].text;
      if (what == "object") {
        cb.object(want(ln, 1, "object id"));
        want_end(ln, 2);
      } else if (what == "arrow") {
        const std::string& id = want(ln, 1, "arrow id");
        want_lit(ln, 2, ":");
        const std::string& src = want(ln, 3, "source object");
        want_lit(ln, 4, "->");
        const std::string& dst = want(ln, 5, "target object");
        want_end(ln, 6);
        cb.arrow(id, src, dst);
      } else if (what == "compose") {
        const std::string& g = want(ln, 1, "arrow id");
        want_lit(ln, 2, ".");
        const std::string& f = want(ln, 3, "arrow id");
        want_lit(ln, 4, "=");
        const std::string& h = want(ln, 5, "arrow id");
        want_end(ln, 6);
        cb.composite(g, f, h);
      } else {
        fail("SyntaxError", at(ln, 0) + ": expected object/arrow/compose, got '" +
                                what + "'");
      }
    }
    located(b[0], [&] { ws.category.emplace(name, cb.build()); });
    ws.order.emplace_back("category", name);
  }

  void parse_functor(const Block& b) {
    std::string name = fresh(b[0], "functor");
    want_lit(b[0], 2, ":");
    CatPtr dom = find_category(b[0], 3);
    want_lit(b[0], 4, "->");
    CatPtr cod = find_category(b[0], 5);
    want_end(b[0], 6);

    Functor u;
    u.name = name;
    u.dom = dom;
    u.cod = cod;
    u.ob.assign(dom->objects(), -1);
    u.fl.assign(dom->arrows(), -1);
    for (size_t i = 1; i < b.size(); ++i) {
      const Line& ln = b[i];
      const std::string& what = ln.tok[0].text;
      if (what == "ob") {
        int a = find_object(ln, 1, *dom);
        want_lit(ln, 2, "=>");
        int bb = find_object(ln, 3, *cod);
        want_end(ln, 4);
        u.ob[a] = bb;
      } else if (what == "fl") {
        int f = find_arrow(ln, 1, *dom);
        want_lit(ln, 2, "=>");
        int g = find_arrow(ln, 3, *cod);
        want_end(ln, 4);
        u.fl[f] = g;
      } else {
        fail("SyntaxError", at(ln, 0) + ": expected ob/fl, got '" + what + "'");
      }
    }
    for (int x = 0; x < dom->objects(); ++x)
      require(u.ob[x] >= 0, "ValidationError",
              "line " + std::to_string(b[0].no) + ": functor " + name +
                  " does not map object '" + dom->object_name[x] + "'");
    for (int x = 0; x < dom->objects(); ++x)
      if (u.fl[dom->id_arrow[x]] < 0)
        u.fl[dom->id_arrow[x]] = cod->id_arrow[u.ob[x]];
    for (int f = 0; f < dom->arrows(); ++f)
      require(u.fl[f] >= 0, "ValidationError",
              "line " + std::to_string(b[0].no) + ": functor " + name +
                  " does not map arrow '" + dom->arrow_name[f] + "'");
    located(b[0], [&] { validate_functor(u); });
    ws.functor.emplace(name, std::move(u));
    ws.order.emplace_back("functor", name);
  }

  void parse_cleavage(const Block& b) {
    std::string name = fresh(b[0], "cleavage");
    want_lit(b[0], 2, "on");
    const Functor& p = find_functor(b[0], 3);
    want_end(b[0], 4);

    Cleavage c;
    located(b[0], [&] { c.cert = certify_fibration(p); });
    c.name = name;
    const FiniteCategory& e = c.cert->total();
    const FiniteCategory& base = c.cert->base();
    c.lift.assign(e.objects(), std::vector<int>(base.arrows(), -1));
    for (int x = 0; x < e.objects(); ++x)
      c.lift[x][base.id_arrow[p.ob[x]]] = e.id_arrow[x];

    for (size_t i = 1; i < b.size(); ++i) {
      const Line& ln = b[i];
      require(ln.tok[0].text == "lift", "SyntaxError",
              at(ln, 0) + ": expected lift, got '" + ln.tok[0].text + "'");
      int x = find_object(ln, 1, e);
      int phi = find_arrow(ln, 2, base);
      want_lit(ln, 3, "=>");
      int f = find_arrow(ln, 4, e);
      want_end(ln, 5);
      require(base.src[phi] == p.ob[x], "ValidationError",
              at(ln, 2) + ": arrow '" + base.arrow_name[phi] +
                  "' does not start at the image of '" + e.object_name[x] + "'");
      c.lift[x][phi] = f;
    }
    located(b[0], [&] {
      require_normal(c);
      validate_cleavage(c);
    });
    ws.cleavage.emplace(name, std::move(c));
    ws.order.emplace_back("cleavage", name);
  }

  void parse_diagram(const Block& b) {
    std::string name = fresh(b[0], "diagram");
    want_lit(b[0], 2, ":");
    CatPtr base = find_category(b[0], 3);
    want_end(b[0], 4);

    DiagramOfCategories z;
    z.name = name;
    z.base = base;
    z.value.assign(base->objects(), nullptr);
    z.map.resize(base->arrows());
    std::vector<bool> have(base->arrows(), false);
    for (size_t i = 1; i < b.size(); ++i) {
      const Line& ln = b[i];
      const std::string& what = ln.tok[0].text;
      if (what == "value") {
        int x = find_object(ln, 1, *base);
        want_lit(ln, 2, "=>");
        z.value[x] = find_category(ln, 3);
        want_end(ln, 4);
      } else if (what == "map") {
        int f = find_arrow(ln, 1, *base);
        want_lit(ln, 2, "=>");
        z.map[f] = find_functor(ln, 3);
        want_end(ln, 4);
        have[f] = true;
      } else {
        fail("SyntaxError", at(ln, 0) + ": expected value/map, got '" + what + "'");
      }
    }
    for (int x = 0; x < base->objects(); ++x)
      require(z.value[x] != nullptr, "ValidationError",
              "line " + std::to_string(b[0].no) + ": diagram " + name +
                  " has no value at object '" + base->object_name[x] + "'");
    for (int x = 0; x < base->objects(); ++x) {
      int f = base->id_arrow[x];
      if (!have[f]) {
        z.map[f] = identity_functor(z.value[x]);
        have[f] = true;
      }
    }
    for (int f = 0; f < base->arrows(); ++f)
      require(have[f], "ValidationError",
              "line " + std::to_string(b[0].no) + ": diagram " + name +
                  " has no functor at arrow '" + base->arrow_name[f] + "'");
    located(b[0], [&] { validate_diagram(z); });
    ws.diagram.emplace(name, std::move(z));
    ws.order.emplace_back("diagram", name);
  }

  void parse_action(const Block& b) {
    std::string name = fresh(b[0], "action");
    want_lit(b[0], 2, ":");
    CatPtr group = find_category(b[0], 3);
    want_lit(b[0], 4, "on");
    CatPtr cat = find_category(b[0], 5);
    want_end(b[0], 6);

    CatGroupAction a;
    a.name = name;
    a.group = group;
    a.cat = cat;
    a.by.resize(group->arrows());
    std::vector<bool> have(group->arrows(), false);
    require(group->objects() == 1, "ValidationError",
            at(b[0], 3) + ": '" + group->name + "' is not a one-object category");
    int e = group->id_arrow[0];
    a.by[e] = identity_functor(cat);
    have[e] = true;

    for (size_t i = 1; i < b.size(); ++i) {
      const Line& ln = b[i];
      require(ln.tok[0].text == "gen", "SyntaxError",
              at(ln, 0) + ": expected gen, got '" + ln.tok[0].text + "'");
      int g = find_arrow(ln, 1, *group);
      want_lit(ln, 2, "=>");
      const Functor& u = find_functor(ln, 3);
      want_end(ln, 4);
      require(u.dom == cat && u.cod == cat, "ValidationError",
              at(ln, 3) + ": functor '" + u.name + "' is not an endofunctor of " +
                  cat->name);
      a.by[g] = u;
      have[g] = true;
    }

    // close the listed generators under the group's composition
    for (bool moved = true; moved;) {
      moved = false;
      for (int g = 0; g < group->arrows(); ++g)
        for (int f = 0; f < group->arrows(); ++f) {
          if (!have[g] || !have[f]) continue;
          int gf = group->comp[g * group->arrows() + f];
          Functor c = compose(a.by[g], a.by[f]);
          if (!have[gf]) {
            a.by[gf] = std::move(c);
            have[gf] = true;
            moved = true;
          } else {
            require(functors_equal(a.by[gf], c), "ValidationError",
                    "line " + std::to_string(b[0].no) + ": generators of " + name +
                        " disagree on '" + group->arrow_name[gf] + "'");
          }
        }
    }
    for (int g = 0; g < group->arrows(); ++g)
      require(have[g], "ValidationError",
              "line " + std::to_string(b[0].no) + ": element '" +
                  group->arrow_name[g] + "' is not generated");
    located(b[0], [&] { validate_action(a); });
    ws.action.emplace(name, std::move(a));
    ws.order.emplace_back("action", name);
  }
};

} // namespace

Workspace parse_workspace(const std::string& text) {
  Parser p;
  p.run(text);
  return p.ws;
}

}  // namespace cleave
