#include "nilcov/cli.hpp"

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilcov/baer.hpp"
#include "nilcov/collect.hpp"
#include "nilcov/cover.hpp"
#include "nilcov/fingroup.hpp"
#include "nilcov/hall.hpp"

namespace nilcov {

namespace {

using json = nlohmann::ordered_json;

json json_int(const Int& v) {
  if (v <= std::numeric_limits<long long>::max() &&
      v >= std::numeric_limits<long long>::min())
    return static_cast<long long>(v);
  return v.str();
}

json json_ints(const std::vector<Int>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(json_int(v));
  return arr;
}

json json_abelian(const AbelianType& t) {
  json out = json::object();
  out["invariants"] = json_ints(t.factors);
  if (t.free_rank) out["free_rank"] = t.free_rank;
  return out;
}

// Product expressions over x1..xk with integer exponents, parentheses and
// commutator brackets: e.g. "x1^2 [x2,x1]^-1 (x1 x2)^3".
class ExprParser {
 public:
  ExprParser(std::string s, NilCtxPtr ctx) : s_(std::move(s)), ctx_(std::move(ctx)) {}

  NilElement parse() {
    NilElement e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("expression error at position " +
                                std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*'))
      ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  Int integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected an integer");
    return Int(s_.substr(start, pos_ - start));
  }
  NilElement expr() {
    NilElement acc = ctx_->identity();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ',' || s_[pos_] == ']' || s_[pos_] == ')')
        return acc;
      acc = multiply(acc, factor());
    }
  }
  NilElement factor() {
    NilElement a = atom();
    if (peek('^')) {
      ++pos_;
      return power(a, integer());
    }
    return a;
  }
  NilElement atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '[') {
      ++pos_;
      NilElement l = expr();
      expect(',');
      NilElement r = expr();
      expect(']');
      return commutator(l, r);
    }
    if (s_[pos_] == '(') {
      ++pos_;
      NilElement e = expr();
      expect(')');
      return e;
    }
    if (s_[pos_] == 'x') {
      ++pos_;
      Int i = integer();
      if (i < 1 || i > ctx_->letters()) fail("letter index out of range");
      return ctx_->letter(static_cast<int>(i));
    }
    fail("expected a letter, '[' or '('");
  }

  std::string s_;
  NilCtxPtr ctx_;
  std::size_t pos_ = 0;
};

struct GlobalOpts {
  bool as_json = false;
  long long seed = 0;
  std::size_t max_basis = HallBasis::default_cap;
  std::size_t max_order = 1024;
};

void emit(std::ostream& out, const GlobalOpts& g, const std::string& sub,
          const json& input, const json& result, const std::string& text,
          std::chrono::steady_clock::time_point t0) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (g.as_json) {
    json env = json::object();
    env["subcommand"] = sub;
    env["input"] = input;
    env["result"] = result;
    env["elapsed_ms"] = ms;
    env["version"] = tool_version;
    out << env.dump() << "\n";
  } else {
    out << text;
  }
}

std::string witness_text(const FiniteGroup& g, const std::vector<int>& a) {
  std::ostringstream os;
  os << "order " << g.order() << ", |A| = " << a.size();
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact Baer invariants and stem covers of Z_r + Z_s"};
  app.name("nilcov");
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_flag("--json", g.as_json, "machine-readable JSON envelope");
  app.add_option("--seed", g.seed, "seed for randomized property tools");
  app.add_option("--max-basis", g.max_basis, "Hall basis size guard");
  app.add_option("--max-order", g.max_order, "finite group order guard");

  // hall
  auto* hall = app.add_subcommand("hall", "list or count basic commutators");
  long long hk = 0, hw = 0;
  bool count_only = false;
  hall->add_option("--letters", hk, "number of letters")->required();
  hall->add_option("--weight", hw, "maximum weight")->required();
  hall->add_flag("--count-only", count_only, "print the Witt count table");

  // nf
  auto* nf = app.add_subcommand("nf", "normal form in the free nilpotent group");
  long long nk = 0, nw = 0;
  std::string expr;
  nf->add_option("--letters", nk, "number of letters")->required();
  nf->add_option("--class", nw, "nilpotency class")->required();
  nf->add_option("--expr", expr, "word in x1..xk with ^, [,] and (,)")->required();

  // baer
  auto* baer = app.add_subcommand("baer", "Baer invariant N_cM(Z_r + Z_s)");
  BaerInput bin;
  std::string method = "both";
  baer->add_option("--r", bin.r, "first cyclic order")->required();
  baer->add_option("--s", bin.s, "second cyclic order")->required();
  baer->add_option("--c", bin.c, "nilpotency class")->required();
  baer->add_option("--method", method, "formula|engine|both")
      ->check(CLI::IsMember({"formula", "engine", "both"}));

  // pcp
  auto* pcp_cmd = app.add_subcommand("pcp", "power-commutator presentations");
  std::string pcp_file;
  bool pcp_check = false, pcp_mat = false;
  pcp_cmd->add_option("--file", pcp_file, "presentation file")->required();
  pcp_cmd->add_flag("--check", pcp_check, "consistency check only");
  pcp_cmd->add_flag("--materialize", pcp_mat, "materialize and summarize");

  // cover
  auto* cover = app.add_subcommand("cover", "stem covers of Z_r + Z_s");
  cover->require_subcommand(1);
  auto* verdict = cover->add_subcommand("verdict", "existence verdict with trace");
  auto* construct = cover->add_subcommand("construct", "classical c = 1 witness");
  auto* search = cover->add_subcommand("search", "exhaustive Pcp search");
  BaerInput vin, cin_, sin;
  verdict->add_option("--r", vin.r)->required();
  verdict->add_option("--s", vin.s)->required();
  verdict->add_option("--c", vin.c)->required();
  construct->add_option("--r", cin_.r)->required();
  construct->add_option("--s", cin_.s)->required();
  search->add_option("--r", sin.r)->required();
  search->add_option("--s", sin.s)->required();
  search->add_option("--c", sin.c)->required();

  app.require_subcommand(1);

  std::vector<std::string> argv(args);
  std::reverse(argv.begin(), argv.end());  // CLI11 wants reversed argv
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n" << app.help();
    return 1;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (*hall) {
      if (hk < 1 || hw < 1) throw std::invalid_argument("letters and weight must be >= 1");
      json input{{"letters", hk}, {"weight", hw}, {"count_only", count_only}};
      if (count_only) {
        json counts = json::array();
        std::ostringstream text;
        for (long long m = 1; m <= hw; ++m) {
          long long c = witt_count(hk, m);
          counts.push_back(json{{"weight", m}, {"count", c}});
          text << "weight " << m << ": " << c << "\n";
        }
        emit(out, g, "hall", input, json{{"counts", counts}}, text.str(), t0);
        return 0;
      }
      HallBasis basis(static_cast<int>(hk), static_cast<int>(hw), g.max_basis);
      json items = json::array();
      std::ostringstream text;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        items.push_back(basis.at(i).str());
        text << basis.at(i).str() << "\n";
      }
      emit(out, g, "hall", input, json{{"items", items}}, text.str(), t0);
      return 0;
    }

    if (*nf) {
      if (nk < 1 || nw < 1) throw std::invalid_argument("letters and class must be >= 1");
      auto ctx = NilGroupCtx::make(static_cast<int>(nk), static_cast<int>(nw), g.max_basis);
      NilElement e = ExprParser(expr, ctx).parse();
      json input{{"letters", nk}, {"class", nw}, {"expr", expr}};
      json basis = json::array();
      for (std::size_t i = 0; i < ctx->basis().size(); ++i)
        basis.push_back(ctx->basis().at(i).str());
      json result{{"exponents", json_ints(e.exponents())}, {"basis", basis}};
      std::ostringstream text;
      text << "(";
      for (std::size_t i = 0; i < e.exponents().size(); ++i)
        text << (i ? ", " : "") << e.exponents()[i].str();
      text << ")\n";
      emit(out, g, "nf", input, result, text.str(), t0);
      return 0;
    }

    if (*baer) {
      bin.validate();
      json input{{"r", bin.r}, {"s", bin.s}, {"c", bin.c}, {"method", method}};
      json result;
      result["d"] = bin.d();
      result["n"] = witt_count(2, bin.c + 1);
      AbelianType shown;
      std::ostringstream text;
      if (method == "formula") {
        shown = baer_formula(bin);
      } else if (method == "engine") {
        shown = baer_engine(bin, /*class_cap=*/6, g.max_basis);
      } else {
        AbelianType f = baer_formula(bin);
        AbelianType e = baer_engine(bin, /*class_cap=*/6, g.max_basis);
        shown = e;
        result["invariants"] = json_ints(e.factors);
        result["agree"] = f == e;
        text << "N_" << bin.c << "M(Z_" << bin.r << " + Z_" << bin.s
             << ") = " << e.str() << " (agree: " << (f == e ? "yes" : "NO") << ")\n";
        emit(out, g, "baer", input, result, text.str(), t0);
        return 0;
      }
      result["invariants"] = json_ints(shown.factors);
      text << "N_" << bin.c << "M(Z_" << bin.r << " + Z_" << bin.s
           << ") = " << shown.str() << "\n";
      emit(out, g, "baer", input, result, text.str(), t0);
      return 0;
    }

    if (*pcp_cmd) {
      if (pcp_check == pcp_mat)
        throw std::invalid_argument("pcp: pass exactly one of --check, --materialize");
      std::ifstream f(pcp_file);
      if (!f) throw std::invalid_argument("pcp: cannot open " + pcp_file);
      std::stringstream buf;
      buf << f.rdbuf();
      Pcp pcp = Pcp::parse(buf.str());
      json input{{"file", pcp_file}, {"p", pcp.p}, {"m", pcp.m}};
      bool ok = pcp_consistency_check(pcp);
      json result{{"consistent", ok}, {"order", json_int(pcp.order())}};
      std::ostringstream text;
      text << "p = " << pcp.p << ", m = " << pcp.m << ", consistent: "
           << (ok ? "yes" : "no") << "\n";
      if (pcp_mat) {
        if (!ok) throw std::invalid_argument("pcp: presentation is inconsistent");
        FiniteGroup grp = materialize(pcp, g.max_order);
        auto lc = lower_central(grp);
        auto uc = upper_central(grp);
        result["abelian"] = grp.is_abelian();
        result["center_order"] = uc.size() > 1 ? uc[1].order() : grp.order();
        result["nilpotency_class"] = lc.size() - 1;
        json lco = json::array();
        for (const auto& t : lc) lco.push_back(t.order());
        result["lower_central_orders"] = lco;
        result["abelianization"] = json_ints(abelian_invariants(grp, lc.size() > 1 ? lc[1] : trivial_subgroup(grp)).factors);
        text << "order " << grp.order() << ", class " << lc.size() - 1
             << ", center " << (uc.size() > 1 ? uc[1].order() : grp.order()) << "\n";
      }
      emit(out, g, "pcp", input, result, text.str(), t0);
      return 0;
    }

    if (*verdict) {
      vin.validate();
      CoverVerdict v = stem_cover_verdict(vin, g.max_order);
      json input{{"r", vin.r}, {"s", vin.s}, {"c", vin.c}};
      json result;
      result["verdict"] = to_string(v.status);
      result["d"] = vin.d();
      result["n"] = witt_count(2, vin.c + 1);
      result["trace"] = v.trace;
      std::ostringstream text;
      text << to_string(v.status) << " for (r=" << vin.r << ", s=" << vin.s
           << ", c=" << vin.c << ")\n";
      for (const auto& s : v.trace) text << "  - " << s << "\n";
      if (v.witness) {
        result["witness"] = json{{"order", v.witness->order()},
                                 {"a_order", v.witness_a.size()},
                                 {"verified", v.witness_verified}};
        text << "witness: " << witness_text(*v.witness, v.witness_a) << "\n";
      }
      emit(out, g, "cover verdict", input, result, text.str(), t0);
      return 0;
    }

    if (*construct) {
      auto [grp, a] = construct_c1_cover(cin_.r, cin_.s, g.max_order);
      BaerInput in1{cin_.r, cin_.s, 1};
      Subgroup sub(*grp, a);
      bool pass = is_stem_cover(*grp, sub, in1);
      Subgroup gamma2 = lower_central_term(*grp, 2);
      Subgroup center = upper_central_term(*grp, 1);
      AbelianType g2t = gamma2.order() == 1
                            ? AbelianType{}
                            : abelian_invariants(subgroup_as_group(gamma2));
      json input{{"r", cin_.r}, {"s", cin_.s}};
      json result{{"order", grp->order()},
                  {"center_order", center.order()},
                  {"gamma2_invariants", json_ints(g2t.factors)},
                  {"a_order", a.size()},
                  {"pass", pass}};
      std::ostringstream text;
      text << "covering group of Z_" << cin_.r << " + Z_" << cin_.s << ": order "
           << grp->order() << ", center " << center.order() << ", gamma_2 "
           << g2t.str() << ", is_stem_cover: " << (pass ? "yes" : "NO") << "\n";
      emit(out, g, "cover construct", input, result, text.str(), t0);
      return 0;
    }

    if (*search) {
      sin.validate();
      SearchCertificate cert = exhaustive_search(sin, sin.r, g.max_order);
      bool expect_none = sin.c >= 2;
      bool consistent_with_verdict =
          expect_none ? cert.passing == 0 : cert.passing >= 1;
      json input{{"r", sin.r}, {"s", sin.s}, {"c", sin.c}};
      json result{{"order", cert.order},
                  {"length", cert.length},
                  {"examined", cert.examined},
                  {"consistent", cert.consistent},
                  {"passing", cert.passing},
                  {"verdict_consistent", consistent_with_verdict}};
      json ws = json::array();
      for (const auto& w : cert.witnesses)
        ws.push_back(json{{"order", w.order},
                          {"center_order", w.center_order},
                          {"gamma2_order", w.gamma2_order},
                          {"involutions", w.involutions}});
      result["witnesses"] = ws;
      std::ostringstream text;
      text << "order " << cert.order << " search: examined " << cert.examined
           << ", consistent " << cert.consistent << ", passing " << cert.passing
           << (consistent_with_verdict ? "" : "  ** INCONSISTENT WITH THE DEDUCTIVE VERDICT **") << "\n";
      emit(out, g, "cover search", input, result, text.str(), t0);
      return consistent_with_verdict ? 0 : 2;
    }
  } catch (const resource_error& e) {
    err << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 1;
}

}  // namespace nilcov
