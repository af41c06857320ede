// Command-line front end: names, chart evaluation, membership, separation,
// open restriction, embedding demos, and the self-test suite.
//
// Exit codes: 0 success (Unknown results included), 1 malformed input,
// 2 internal contract violation.

#include <CLI11.hpp>
#include <iostream>

#include "ctop/selftest.hpp"

using namespace ctop;

namespace {

struct MalformedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- lenient rational input ------------------------------------------------
// Inputs accept ordinary decimal syntax ("2", "-0.5", "3/4"); the strict
// binary literal codec is tried first so dumped output re-parses unchanged.

Rat parse_user_rat(std::string s) {
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw MalformedInput("empty rational");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
      throw MalformedInput("bad rational: " + s);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.erase(whole.begin());
    if (whole.empty()) whole = "0";
    try {
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      mpz_class num = mpz_class(whole) * scale + (frac.empty() ? mpz_class(0) : mpz_class(frac));
      Rat q(num, scale);
      q.canonicalize();
      return neg ? Rat(-q) : q;
    } catch (const std::invalid_argument&) {
      throw MalformedInput("bad rational: " + s);
    }
  }
  if (s.find_first_not_of("-0123456789/") == std::string::npos) {
    mpq_t tmp;
    mpq_init(tmp);
    if (mpq_set_str(tmp, s.c_str(), 10) == 0 && mpz_sgn(mpq_denref(tmp)) != 0) {
      mpq_canonicalize(tmp);
      Rat q(tmp);
      mpq_clear(tmp);
      return q;
    }
    mpq_clear(tmp);
  }
  if (auto q = rat_decode(s)) return *q;
  throw MalformedInput("bad rational: " + s);
}

RatVec parse_user_point(std::string s, std::size_t dim) {
  // tolerate surrounding parentheses: (0,1) and 0,1 are the same point
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  RatVec out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? comma : comma - start);
    out.push_back(parse_user_rat(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != dim)
    throw MalformedInput("expected " + std::to_string(dim) + " coordinates, got " +
                         std::to_string(out.size()));
  return out;
}

RationalBall parse_user_ball(const std::string& s, std::size_t n) {
  if (auto strict = parse_ball_literal(s)) {
    if (strict->center.size() == n) return *strict;
  }
  if (s.size() < 4 || s.compare(0, 2, "B(") != 0 || s.back() != ')')
    throw MalformedInput("bad ball literal: " + s);
  std::string body = s.substr(2, s.size() - 3);
  auto semi = body.rfind(';');
  if (semi == std::string::npos) throw MalformedInput("bad ball literal: " + s);
  RatVec c = parse_user_point(body.substr(0, semi), n);
  Rat r = parse_user_rat(body.substr(semi + 1));
  if (r <= 0) throw MalformedInput("ball radius must be positive");
  return RationalBall{std::move(c), std::move(r)};
}

// --- targets ---------------------------------------------------------------

struct Target {
  std::string id;
  SpacePtr space;              // the induced / product space naming points
  AtlasPtr atlas;              // null when no chart surface is exposed
  std::size_t n = 0;           // chart dimension
  std::size_t point_dim = 0;   // tagged-point coordinate count
  bool bare_codes = false;     // print codes without the chart prefix
  std::vector<std::pair<std::string, Word>> chart_names;
};

Target resolve_target(const std::string& desc) {
  auto colon = desc.find(':');
  std::string kind = desc.substr(0, colon);
  long param = -1;
  if (colon != std::string::npos) {
    try {
      param = std::stol(desc.substr(colon + 1));
    } catch (const std::exception&) {
      throw MalformedInput("bad target parameter: " + desc);
    }
    if (param < 1 || param > 6) throw MalformedInput("target dimension out of range: " + desc);
  }
  Target t;
  t.id = desc;
  if (kind == "euclid") {
    if (param < 0) throw MalformedInput("euclid needs a dimension, e.g. euclid:2");
    auto g = gallery_euclidean(param);
    t.space = g.balls;
    t.atlas = g.atlas;
    t.n = t.point_dim = param;
    t.bare_codes = true;
    t.chart_names = {{"id", Word("1")}};
  } else if (kind == "circle") {
    auto g = gallery_circle();
    t.space = g.balls;
    t.atlas = g.atlas;
    t.n = 1;
    t.point_dim = 2;
    t.chart_names = {{"f+", kChartFPlus}, {"f-", kChartFMinus},
                     {"g+", kChartGPlus}, {"g-", kChartGMinus}};
  } else if (kind == "sphere-stereo") {
    if (param < 0) throw MalformedInput("sphere-stereo needs a dimension");
    auto g = gallery_sphere_stereo(param);
    t.space = g.balls;
    t.atlas = g.atlas;
    t.n = param;
    t.point_dim = param + 1;
    t.chart_names = {{"s+1", kChartStereoPlus}, {"s-1", kChartStereoMinus}};
  } else if (kind == "punctured-sphere") {
    if (param < 0) throw MalformedInput("punctured-sphere needs a dimension");
    auto g = gallery_punctured_sphere(param);
    t.space = g.balls;
    t.atlas = g.atlas;
    t.n = param;
    t.point_dim = param + 1;
    t.chart_names = {{"s+1", kChartStereoPlus}};
  } else if (kind == "projective") {
    if (param < 0) throw MalformedInput("projective needs a dimension");
    auto g = gallery_projective(param);
    t.space = g.balls;
    t.atlas = g.atlas;
    t.n = param;
    t.point_dim = param + 1;
    for (long i = 0; i <= param; ++i)
      t.chart_names.push_back({std::to_string(i), nat_encode(mpz_class(i))});
  } else if (kind == "torus") {
    if (param != 2) throw MalformedInput("only torus:2 is available");
    auto g = gallery_torus();
    t.space = g.space;
    t.n = 2;
    t.point_dim = 4;
  } else if (kind == "two-origins") {
    auto g = gallery_two_origins();
    t.space = g.balls;
    t.atlas = g.atlas;
    t.n = 1;
    t.point_dim = 2;
    t.chart_names = {{"lower", Word("0")}, {"upper", Word("1")}};
  } else {
    throw MalformedInput("unknown target: " + desc);
  }
  return t;
}

Word resolve_chart(const Target& t, const std::string& name) {
  for (auto& [label, id] : t.chart_names)
    if (label == name || id == name) return id;
  throw MalformedInput("unknown chart '" + name + "' for target " + t.id);
}

// Chart-qualified codes print as `<chart id>:<ball literal>`.
std::string print_code(const Target& t, const Word& w) {
  if (t.atlas) {
    if (auto c = ball_code_decode(w, t.n)) {
      if (auto b = ball_decode(c->ball, t.n))
        return t.bare_codes ? ball_literal(*b) : c->chart + ":" + ball_literal(*b);
    }
  } else if (auto b = ball_decode(w, t.n)) {
    return ball_literal(*b);
  }
  return w;  // raw word fallback (e.g. product codes)
}

Word parse_open_code(const Target& t, const std::string& s) {
  if (t.atlas && t.atlas->charts.size() > 1) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw MalformedInput("expected <chart>:<ball literal>, got " + s);
    Word chart = resolve_chart(t, s.substr(0, colon));
    return ball_code_encode(chart, ball_encode(parse_user_ball(s.substr(colon + 1), t.n)));
  }
  if (t.atlas)  // single chart: bare literals are shorthand for it
    return ball_code_encode(t.atlas->charts[0].id,
                            ball_encode(parse_user_ball(s, t.n)));
  throw MalformedInput("target " + t.id + " has no base-code syntax");
}

// First budget at which the k-th record appears (listings are prefix
// monotone, so this bisects on the listing length).
Budget first_listed_at(const Name& nm, std::size_t k, Budget hi) {
  Budget lo = 1;
  while (lo < hi) {
    Budget mid = lo + (hi - lo) / 2;
    if (query(nm, mid).size() > k)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void dump_name(const Target& t, const Name& nm, Budget budget, std::size_t samples) {
  auto ws = query(nm, budget);
  if (ws.size() > samples) ws.resize(samples);
  for (std::size_t k = 0; k < ws.size(); ++k)
    std::cout << first_listed_at(nm, k, budget) << " " << ws[k] << "\n";
  if (ws.empty()) std::cout << "(no output at budget " << budget << ")\n";
}

int run(int argc, char** argv) {
  CLI::App app{"computable-topology workbench"};
  app.require_subcommand(1);

  std::string target_s, point_s, point2_s, chart_s, open_s;
  unsigned long budget = 1000, samples = 20, precision = 16;

  auto add_common = [&](CLI::App* sub, bool with_point) {
    sub->add_option("target", target_s, "space identifier, e.g. euclid:2, circle, torus:2")
        ->required();
    if (with_point) sub->add_option("--point", point_s, "tagged point, e.g. 0,-1")->required();
    sub->add_option("--budget", budget, "enumeration budget");
    sub->add_option("--samples", samples, "max records to print");
    sub->add_option("--precision", precision, "target precision k, meaning 2^-k");
  };

  auto* name_cmd = app.add_subcommand("name", "dump a point-name prefix as <budget> <word>");
  add_common(name_cmd, true);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a chart at a point");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--chart", chart_s, "chart label, e.g. s+1 or f+")->required();

  auto* member_cmd = app.add_subcommand("member", "semi-decide membership in a basic open set");
  add_common(member_cmd, true);
  member_cmd->add_option("--open", open_s, "ball literal, optionally <chart>:<literal>")
      ->required();

  auto* sep_cmd = app.add_subcommand("separate", "search for disjoint listed balls");
  sep_cmd->add_option("target", target_s, "space identifier")->required();
  sep_cmd->add_option("--points", point_s, "first point")->required();
  sep_cmd->add_option("point2", point2_s, "second point")->required();
  sep_cmd->add_option("--budget", budget, "pair-search budget");

  auto* restrict_cmd =
      app.add_subcommand("restrict", "restrict a point name to an open submanifold");
  add_common(restrict_cmd, true);
  restrict_cmd->add_option("--open", open_s, "ball literal defining the open set")->required();

  auto* embed_cmd = app.add_subcommand("embed-demo", "run the compact embedding demos");
  auto* self_cmd = app.add_subcommand("selftest", "run the full acceptance-style check suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (app.got_subcommand(self_cmd)) {
    return report_selftest(std::cout) == 0 ? 0 : 2;
  }

  if (app.got_subcommand(embed_cmd)) {
    auto circle = gallery_circle();
    Embedding E = circle_embedding(circle);
    RatVec x{rat(0), rat(1)};
    auto img = apply_translator(E.forward, point_name(circle.balls, x));
    auto tb = tightest_ball(img, E.out_dim, 48);
    std::cout << "circle -> R^8 at (0,1): " << (tb ? ball_literal(*tb) : "(none)") << "\n";
    auto back = apply_translator(E.inverse, img);
    std::size_t sound = 0;
    for (const Word& w : query(back, 40))
      if (circle.balls->member(w, x)) ++sound;
    std::cout << "inverse recovers " << sound << " sound codes at budget 40\n";
    TorusInstance T = gallery_torus();
    RatVec tp{rat(1), rat(0), rat(1), rat(0)};
    auto tf = apply_translator(torus_embedding_forward(T, euclidean_space(3)),
                               point_name(T.space, tp));
    auto ttb = tightest_ball(tf, 3, 48);
    std::cout << "torus -> R^3 at (1,0,1,0): " << (ttb ? ball_literal(*ttb) : "(none)")
              << " (exact image (0,2,1))\n";
    return 0;
  }

  Target t = resolve_target(target_s);

  if (app.got_subcommand(name_cmd)) {
    RatVec p = parse_user_point(point_s, t.point_dim);
    dump_name(t, point_name(t.space, p), budget, samples);
    return 0;
  }

  if (app.got_subcommand(eval_cmd)) {
    if (!t.atlas) throw MalformedInput("target " + t.id + " exposes no charts");
    RatVec p = parse_user_point(point_s, t.point_dim);
    Word chart = resolve_chart(t, chart_s);
    auto out = apply_translator(chart_forward(t.atlas, euclidean_space(t.n), chart),
                                point_name(t.space, p));
    Rat want = pow2(-static_cast<long>(precision) - 1);  // enclosure width 2^-k
    for (Budget b = 64; b <= std::max<Budget>(budget, 64); b *= 2) {
      auto tb = tightest_ball(out, t.n, b);
      if (tb && tb->radius < want) {
        std::cout << ball_literal(*tb) << "\n";
        return 0;
      }
      if (b * 2 > std::max<Budget>(budget, 64)) break;
    }
    std::cout << "Unknown\n";
    return 0;
  }

  if (app.got_subcommand(member_cmd)) {
    RatVec p = parse_user_point(point_s, t.point_dim);
    Word code = parse_open_code(t, open_s);
    auto verdict = member_semidecide(point_name(t.space, p),
                                     theta_from_codes(t.space, {code}), budget);
    std::cout << (verdict.confirmed ? "Confirmed" : "Unknown") << "\n";
    return 0;
  }

  if (app.got_subcommand(sep_cmd)) {
    RatVec p = parse_user_point(point_s, t.point_dim);
    RatVec q = parse_user_point(point2_s, t.point_dim);
    auto sep = separate_points(point_name(t.space, p), point_name(t.space, q), budget);
    if (!sep) {
      std::cout << "Unknown\n";
    } else {
      std::cout << print_code(t, sep->first) << "\n" << print_code(t, sep->second) << "\n";
    }
    return 0;
  }

  if (app.got_subcommand(restrict_cmd)) {
    if (!t.atlas) throw MalformedInput("target " + t.id + " exposes no charts");
    RatVec p = parse_user_point(point_s, t.point_dim);
    Word code = parse_open_code(t, open_s);
    auto sub = open_submanifold(t.atlas, t.space, theta_from_codes(t.space, {code}));
    dump_name(t, apply_translator(sub.restrict_name, point_name(t.space, p)), budget, samples);
    return 0;
  }

  throw MalformedInput("no verb given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
