#include "wittkit/cli.hpp"

#include "wittkit/hermitian_q.hpp"
#include "wittkit/normalize.hpp"
#include "wittkit/witt.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace wittkit::cli {

namespace {

using exactalg::Matrix;
using exactalg::RingSpec;
using formcore::Flavor;
using formcore::FormParameter;
using formcore::UnimodularForm;

RingSpec parse_ring(const std::string &s) {
  if (s == "Z" || s == "z")
    return RingSpec::integers();
  if ((s[0] == 'F' || s[0] == 'f') && s.size() > 1)
    return RingSpec::mod(Int(s.substr(1)));
  if (s.rfind("Zmod", 0) == 0)
    return RingSpec::mod(Int(s.substr(4)));
  throw validation_error("unknown ring '" + s + "' (use Z, F<p>, Zmod<n>)");
}

nlohmann::json parse_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw validation_error("cannot open input file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    // report line and column from the byte offset
    size_t line = 1, col = 1;
    for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else
        ++col;
    }
    throw validation_error("malformed JSON in " + path + " at line " +
                           std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + e.what());
  }
}

void write_output(const std::string &path, const nlohmann::json &j) {
  if (path.empty())
    return;
  std::ofstream out(path);
  if (!out)
    throw validation_error("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

FormParameter make_param(const std::string &ring, const std::string &flavor,
                         int eps) {
  auto fl = formcore::flavor_from_name(flavor);
  if (!fl)
    throw validation_error("unknown flavor '" + flavor + "'");
  return FormParameter::make(parse_ring(ring), *fl, eps);
}

std::string parity_str(const UnimodularForm &f) {
  return formcore::is_even_parity(f) ? "even" : "odd";
}

std::string det_class_str(const UnimodularForm &f) {
  const RingSpec &ring = f.param().ring();
  Int d = f.rank() == 0 ? Int(1) : exactalg::det(f.gram());
  if (ring.is_integers())
    return d.get_str();
  Int dmin = d;
  for (const Int &u : ring.units())
    dmin = std::min(dmin, ring.mul(ring.mul(u, u), d));
  return dmin.get_str();
}

std::string witt_class_str(const UnimodularForm &f, int cap) {
  const RingSpec &ring = f.param().ring();
  if (ring.is_integers())
    return std::to_string(formcore::signature(f));
  auto table = formcore::witt_classes(f.param(), std::max(cap, f.rank()));
  int idx = formcore::class_index(table.classes, f);
  std::ostringstream os;
  const auto &coords = table.witt_coords[idx];
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i)
    os << (i ? "," : "") << coords[i].get_str();
  os << ")";
  return os.str();
}

int cmd_witt(const std::string &ring, const std::string &flavor, int eps,
             int cap, const std::string &outpath, std::ostream &out) {
  FormParameter p = make_param(ring, flavor, eps);
  auto res = formcore::witt_group(p, cap);
  out << res.group.str() << "\n";
  nlohmann::json j{{"command", "witt"},
                   {"ring", ring},
                   {"flavor", flavor},
                   {"cap", cap},
                   {"group", res.group.str()},
                   {"description", res.description}};
  write_output(outpath, j);
  return 0;
}

int cmd_gw(const std::string &ring, const std::string &flavor, int eps,
           int cap, const std::string &outpath, std::ostream &out) {
  FormParameter p = make_param(ring, flavor, eps);
  std::vector<UnimodularForm> gens;
  if (p.ring().is_integers()) {
    if (p.flavor() == Flavor::Symmetric) {
      gens.push_back(UnimodularForm::from_gram(
          p, Matrix::from_rows(p.ring(), {{Int(1)}})));
      gens.push_back(UnimodularForm::from_gram(
          p, Matrix::from_rows(p.ring(), {{Int(-1)}})));
    } else {
      gens.push_back(formcore::e8_form(p));
      gens.push_back(UnimodularForm::hyperbolic(p, 1));
    }
  }
  auto res = formcore::gw0(p, gens, cap);
  out << res.description << "\n";
  nlohmann::json images = nlohmann::json::array();
  for (auto &[label, coords] : res.generator_images) {
    nlohmann::json c = nlohmann::json::array();
    for (const Int &x : coords)
      c.push_back(x.get_str());
    images.push_back(nlohmann::json{{"generator", label}, {"image", c}});
  }
  nlohmann::json j{{"command", "gw"},
                   {"ring", ring},
                   {"flavor", flavor},
                   {"cap", cap},
                   {"group", res.group.str()},
                   {"description", res.description},
                   {"generator_images", images}};
  write_output(outpath, j);
  return 0;
}

int cmd_classify(const std::string &inpath, const std::string &otherpath,
                 int cap, const std::string &outpath, std::ostream &out) {
  UnimodularForm f = formcore::form_from_json(parse_json_file(inpath));
  // CSV invariant table
  out << "rank,signature,parity,det-class,witt-class\n";
  std::string sig = f.param().ring().is_integers()
                        ? std::to_string(formcore::signature(f))
                        : "-";
  out << f.rank() << "," << sig << "," << parity_str(f) << ","
      << det_class_str(f) << "," << witt_class_str(f, cap) << "\n";
  nlohmann::json j{{"command", "classify"},
                   {"rank", f.rank()},
                   {"signature", sig},
                   {"parity", parity_str(f)},
                   {"det_class", det_class_str(f)},
                   {"witt_class", witt_class_str(f, cap)}};
  if (!otherpath.empty()) {
    UnimodularForm g = formcore::form_from_json(parse_json_file(otherpath));
    auto res = formcore::is_isometric(f, g, cap);
    std::string verdict = res.verdict == formcore::IsoVerdict::Yes ? "yes"
                          : res.verdict == formcore::IsoVerdict::No
                              ? "no"
                              : "unknown";
    out << "isometric: " << verdict;
    if (!res.distinguishing.empty())
      out << " (" << res.distinguishing << ")";
    out << "\n";
    j["isometric"] = verdict;
    if (res.witness) {
      j["witness"] = exactalg::matrix_to_json(res.witness->u);
      out << "witness: " << res.witness->u.str() << "\n";
    }
  }
  write_output(outpath, j);
  return 0;
}

int cmd_normalize(const std::string &inpath, const std::string &logpath,
                  const std::string &outpath, std::ostream &out) {
  qsurgery::QuadraticComplex x =
      qsurgery::quadratic_from_json(parse_json_file(inpath));
  auto res = qsurgery::normalize_to_heart(x);
  out << "recovered form: rank " << res.form.rank() << "\n";
  out << "gram: " << res.form.gram().str() << "\n";
  if (res.form.param().ring().is_integers())
    out << "signature: " << formcore::signature(res.form) << "\n";
  else if (res.form.param().ring().modulus() == 2 && res.form.rank() % 2 == 0)
    out << "arf: " << formcore::arf(res.form).get_str() << "\n";
  out << "steps: " << res.log.size() << "\n";
  for (const auto &s : res.log)
    out << "  step " << s.index << ": degree " << s.k << ", rank "
        << s.rank_t << "; before [" << s.homology_before << "] after ["
        << s.homology_after << "]\n";
  if (!logpath.empty()) {
    std::ofstream lf(logpath);
    if (!lf)
      throw validation_error("cannot open log file: " + logpath);
    for (const auto &s : res.log)
      lf << nlohmann::json{{"step", s.index},
                           {"k", s.k},
                           {"rank_T", s.rank_t},
                           {"homology_before", s.homology_before},
                           {"homology_after", s.homology_after}}
                .dump()
         << "\n";
  }
  write_output(outpath, formcore::form_to_json(res.form));
  return 0;
}

int cmd_qcat(const std::string &ring, const std::string &flavor, int eps,
             int cap, bool components, const std::string &dotpath,
             const std::string &outpath, std::ostream &out) {
  FormParameter p = make_param(ring, flavor, eps);
  auto q = qcat::build_hermitian_q(p, cap);
  out << "objects: " << q.category.num_objects() << "\n";
  if (components) {
    auto comp = q.category.components();
    out << "components: " << q.category.component_count() << "\n";
    for (int i = 0; i < q.category.num_objects(); ++i)
      out << "  [" << comp[i] << "] " << q.category.object(i) << "\n";
  }
  if (!dotpath.empty()) {
    std::ofstream df(dotpath);
    if (!df)
      throw validation_error("cannot open dot file: " + dotpath);
    df << q.category.to_dot();
  }
  nlohmann::json j = q.category.to_json();
  nlohmann::json objs = nlohmann::json::array();
  for (const auto &o : q.objects)
    objs.push_back(formcore::form_to_json(o));
  j["object_forms"] = objs;
  write_output(outpath, j);
  return 0;
}

int cmd_check(const std::string &inpath, std::ostream &out) {
  nlohmann::json j = parse_json_file(inpath);
  if (j.contains("psi")) {
    qsurgery::QuadraticComplex x = qsurgery::quadratic_from_json(j);
    auto rep = qsurgery::check_poincare(x);
    out << "quadratic complex OK (relations hold); poincare: "
        << (rep.poincare ? "yes" : "no") << "\n";
    return 0;
  }
  if (j.contains("differentials")) {
    chaincx::ChainComplex c = chaincx::complex_from_json(j);
    out << "chain complex OK (d o d = 0): " << c.str() << "\n";
    return 0;
  }
  if (j.contains("gram")) {
    UnimodularForm f = formcore::form_from_json(j);
    out << "form OK: rank " << f.rank() << " over " << f.param().str()
        << "\n";
    return 0;
  }
  exactalg::Matrix m = exactalg::matrix_from_json(j);
  out << "matrix OK: " << m.rows() << "x" << m.cols() << " over "
      << m.ring().str() << "\n";
  return 0;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"exact unimodular-form and algebraic-surgery toolkit"};
  app.require_subcommand(1);

  std::string ring = "Z", flavor = "symmetric", inpath, otherpath, outpath,
              logpath, dotpath;
  int eps = 1, cap = 4, jobs = 1;
  unsigned long seed = 0;
  bool components = false;

  auto add_common = [&](CLI::App *c, bool needs_ring) {
    if (needs_ring) {
      c->add_option("--ring", ring, "ground ring: Z, F<p>, Zmod<n>");
      c->add_option("--flavor", flavor,
                    "symmetric | quadratic | even | general");
      c->add_option("--epsilon", eps, "sign of the involution, +1 or -1");
    }
    c->add_option("--cap", cap, "rank cap for enumeration");
    c->add_option("--out", outpath, "write a JSON report here");
    c->add_option("--seed", seed, "seed for randomized suites (reports are "
                                  "reproducible for a fixed seed)");
    c->add_option("--jobs", jobs, "worker count for data-parallel steps")
        ->check(CLI::PositiveNumber);
  };

  CLI::App *witt = app.add_subcommand("witt", "Witt group of the parameter");
  add_common(witt, true);
  CLI::App *gw = app.add_subcommand("gw", "Grothendieck-Witt group");
  add_common(gw, true);
  CLI::App *classify =
      app.add_subcommand("classify", "invariant table of a form (CSV)");
  add_common(classify, false);
  classify->add_option("--in", inpath, "form JSON")->required();
  classify->add_option("--other", otherpath, "second form to compare");
  CLI::App *normalize = app.add_subcommand(
      "normalize", "heart normalization of a quadratic Poincare complex");
  add_common(normalize, false);
  normalize->add_option("--in", inpath, "quadratic complex JSON")->required();
  normalize->add_option("--log", logpath, "step log (JSON lines)");
  CLI::App *qc =
      app.add_subcommand("qcat", "classical hermitian Q-construction");
  add_common(qc, true);
  qc->add_flag("--components", components, "print the component partition");
  qc->add_option("--dot", dotpath, "write a DOT quiver here");
  CLI::App *check = app.add_subcommand("check", "validate a JSON input");
  check->add_option("--in", inpath, "form/complex/matrix JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (witt->parsed())
      return cmd_witt(ring, flavor, eps, cap, outpath, out);
    if (gw->parsed())
      return cmd_gw(ring, flavor, eps, cap, outpath, out);
    if (classify->parsed())
      return cmd_classify(inpath, otherpath, cap, outpath, out);
    if (normalize->parsed())
      return cmd_normalize(inpath, logpath, outpath, out);
    if (qc->parsed())
      return cmd_qcat(ring, flavor, eps, cap, components, dotpath, outpath,
                      out);
    if (check->parsed())
      return cmd_check(inpath, out);
  } catch (const cap_error &e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const validation_error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error &e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
  err << "error: no subcommand\n";
  return 2;
}

} // namespace wittkit::cli
