#include "projext/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "projext/errors.hpp"

namespace projext {

namespace {

std::string child(const std::string& path, const std::string& key) {
  return path + "/" + key;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& field(const Json& j, const std::string& key,
                  const std::string& path) {
  if (!j.is_object()) {
    throw ParseError(path.empty() ? "/" : path, "expected an object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(child(path, key), "missing field");
  }
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) {
    throw ParseError(path, "expected an array");
  }
  return j;
}

Json real(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

double read_real(const Json& j, const std::string& path,
                 double null_value = std::numeric_limits<double>::quiet_NaN()) {
  if (j.is_null()) {
    return null_value;
  }
  if (!j.is_number()) {
    throw ParseError(path, "expected a number");
  }
  return j.get<double>();
}

bool read_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) {
    throw ParseError(path, "expected a boolean");
  }
  return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    throw ParseError(path, "expected a string");
  }
  return j.get<std::string>();
}

long long read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ParseError(path, "expected an integer");
  }
  return j.get<long long>();
}

Json complex_json(Complex z) { return Json::array({real(z.real()), real(z.imag())}); }

Complex read_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(path, "expected [re, im]");
  }
  return {read_real(j[0], child(path, 0)), read_real(j[1], child(path, 1))};
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(complex_json(m(i, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix read_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols,
                   const std::string& path) {
  array(j, path);
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    throw ParseError(path, "expected " + std::to_string(rows) + " rows, got " +
                               std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string rp = child(path, static_cast<std::size_t>(i));
    const Json& row = array(j[static_cast<std::size_t>(i)], rp);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(rp, "expected " + std::to_string(cols) +
                               " entries, got " + std::to_string(row.size()));
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = read_complex(row[static_cast<std::size_t>(k)],
                             child(rp, static_cast<std::size_t>(k)));
    }
  }
  return m;
}

void dump(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",\n";
        }
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_primitive() ||
               (e.is_array() && std::all_of(e.begin(), e.end(),
                                            [](const Json& f) {
                                              return f.is_primitive();
                                            }));
      });
      out += "[";
      bool first = true;
      for (const Json& e : j) {
        out += first ? (flat ? "" : "\n" + inner) : (flat ? ", " : ",\n" + inner);
        first = false;
        dump(e, indent + 1, out);
      }
      out += flat ? "]" : "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json to_json(const AlgebraDescriptor& a) {
  Json blocks = Json::array();
  for (const Block& b : a.blocks()) {
    blocks.push_back({{"dim", b.dim}, {"weight", real(b.weight)}});
  }
  return {{"blocks", blocks}};
}

AlgebraDescriptor algebra_from_json(const Json& j, const std::string& path) {
  const std::string bp = child(path, "blocks");
  const Json& blocks = array(field(j, "blocks", path), bp);
  std::vector<Block> out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string kp = child(bp, k);
    const long long dim = read_int(field(blocks[k], "dim", kp), child(kp, "dim"));
    const double w = read_real(field(blocks[k], "weight", kp), child(kp, "weight"));
    if (dim < 1 || dim > 1024) {
      throw ParseError(child(kp, "dim"), "dimension must be in [1, 1024]");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParseError(child(kp, "weight"), "weight must be positive");
    }
    out.push_back({static_cast<int>(dim), w});
  }
  if (out.empty()) {
    throw ParseError(bp, "an algebra needs at least one block");
  }
  return AlgebraDescriptor(std::move(out));
}

Json to_json(const Operator& x) {
  Json blocks = Json::array();
  for (const Matrix& m : x.blocks()) {
    blocks.push_back(matrix_json(m));
  }
  return {{"blocks", blocks}};
}

Operator operator_from_json(const Json& j, const AlgebraDescriptor& algebra,
                            const std::string& path) {
  const std::string bp = child(path, "blocks");
  const Json& blocks = array(field(j, "blocks", path), bp);
  if (blocks.size() != algebra.block_count()) {
    throw ParseError(bp, "expected " + std::to_string(algebra.block_count()) +
                             " blocks, got " + std::to_string(blocks.size()));
  }
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const int n = algebra.block_dim(k);
    out.push_back(read_matrix(blocks[k], n, n, child(bp, k)));
  }
  return Operator(algebra, std::move(out));
}

Json to_json(const LinearMapMatrix& m) {
  return {{"domain", to_json(m.domain())},
          {"codomain", to_json(m.codomain())},
          {"matrix", matrix_json(m.matrix())}};
}

LinearMapMatrix linear_map_from_json(const Json& j, const std::string& path) {
  const AlgebraDescriptor domain =
      algebra_from_json(field(j, "domain", path), child(path, "domain"));
  const AlgebraDescriptor codomain =
      algebra_from_json(field(j, "codomain", path), child(path, "codomain"));
  Matrix m = read_matrix(field(j, "matrix", path), codomain.total_dim(),
                         domain.total_dim(), child(path, "matrix"));
  return LinearMapMatrix(domain, codomain, std::move(m));
}

Json to_json(const BatteryReport& r) {
  Json checks = Json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", real(c.residual)},
                      {"tolerance", real(c.tolerance)},
                      {"passed", c.passed}});
  }
  return {{"checks", checks}, {"overall", r.overall}};
}

BatteryReport battery_from_json(const Json& j, const std::string& path) {
  BatteryReport r;
  const std::string cp = child(path, "checks");
  const Json& checks = array(field(j, "checks", path), cp);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string ip = child(cp, i);
    const Json& c = checks[i];
    r.checks.push_back(
        {read_string(field(c, "name", ip), child(ip, "name")),
         read_real(field(c, "residual", ip), child(ip, "residual")),
         read_real(field(c, "tolerance", ip), child(ip, "tolerance")),
         read_bool(field(c, "passed", ip), child(ip, "passed"))});
  }
  r.overall = read_bool(field(j, "overall", path), child(path, "overall"));
  return r;
}

Json to_json(const CertificateReport& c) {
  Json witnesses = Json::array();
  for (const Operator& w : c.witnesses) {
    Json e = to_json(w);
    e["algebra"] = to_json(w.algebra());
    witnesses.push_back(std::move(e));
  }
  Json sequence = Json::array();
  for (double v : c.sequence) {
    sequence.push_back(real(v));
  }
  return {{"name", c.name},           {"residual", real(c.residual)},
          {"tolerance", real(c.tolerance)}, {"passed", c.passed},
          {"context", c.context},     {"witnesses", witnesses},
          {"sequence", sequence}};
}

CertificateReport certificate_from_json(const Json& j,
                                        const std::string& path) {
  CertificateReport c;
  c.name = read_string(field(j, "name", path), child(path, "name"));
  c.residual = read_real(field(j, "residual", path), child(path, "residual"));
  c.tolerance = read_real(field(j, "tolerance", path), child(path, "tolerance"));
  c.passed = read_bool(field(j, "passed", path), child(path, "passed"));
  if (j.contains("context")) {
    c.context = read_string(j["context"], child(path, "context"));
  }
  if (j.contains("witnesses")) {
    const std::string wp = child(path, "witnesses");
    const Json& ws = array(j["witnesses"], wp);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::string ip = child(wp, i);
      const AlgebraDescriptor a =
          algebra_from_json(field(ws[i], "algebra", ip), child(ip, "algebra"));
      c.witnesses.push_back(operator_from_json(ws[i], a, ip));
    }
  }
  if (j.contains("sequence")) {
    const std::string sp = child(path, "sequence");
    const Json& seq = array(j["sequence"], sp);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      c.sequence.push_back(read_real(seq[i], child(sp, i)));
    }
  }
  return c;
}

Json to_json(const ExtensionProblem& p) {
  return {{"source", to_json(p.source())},
          {"target", to_json(p.target())},
          {"u_map", to_json(p.u_map())}};
}

ExtensionProblem problem_from_json(const Json& j, const std::string& path) {
  const AlgebraDescriptor source =
      algebra_from_json(field(j, "source", path), child(path, "source"));
  const AlgebraDescriptor target =
      algebra_from_json(field(j, "target", path), child(path, "target"));
  const std::string up = child(path, "u_map");
  LinearMapMatrix u = linear_map_from_json(field(j, "u_map", path), up);
  if (!(u.domain() == source)) {
    throw ParseError(child(up, "domain"), "differs from /source");
  }
  if (!(u.codomain() == target)) {
    throw ParseError(child(up, "codomain"), "differs from /target");
  }
  return ExtensionProblem(source, target, std::move(u));
}

Json to_json(const ExtensionResult& r) {
  Json certs = Json::array();
  for (const CertificateReport& c : r.certificates) {
    certs.push_back(to_json(c));
  }
  return {{"phi", to_json(r.phi)},
          {"certificates", certs},
          {"hypothesis_report", to_json(r.hypothesis_report)}};
}

ExtensionResult result_from_json(const Json& j, const std::string& path) {
  LinearMapMatrix phi =
      linear_map_from_json(field(j, "phi", path), child(path, "phi"));
  std::vector<CertificateReport> certs;
  const std::string cp = child(path, "certificates");
  const Json& cs = array(field(j, "certificates", path), cp);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    certs.push_back(certificate_from_json(cs[i], child(cp, i)));
  }
  BatteryReport hyp = battery_from_json(field(j, "hypothesis_report", path),
                                        child(path, "hypothesis_report"));
  return ExtensionResult{std::move(phi), std::move(certs), std::move(hyp)};
}

Json to_json(const InstanceBundle& b) {
  Json j = to_json(b.problem);
  j["ground_truth"] = to_json(b.ground_truth);
  j["h"] = to_json(b.h);
  return j;
}

InstanceBundle instance_from_json(const Json& j, const std::string& path) {
  ExtensionProblem problem = problem_from_json(j, path);
  const std::string gp = child(path, "ground_truth");
  LinearMapMatrix truth = linear_map_from_json(field(j, "ground_truth", path), gp);
  if (!(truth.domain() == problem.source()) ||
      !(truth.codomain() == problem.target())) {
    throw ParseError(gp, "does not map /source to /target");
  }
  Operator h = operator_from_json(field(j, "h", path), problem.target(),
                                  child(path, "h"));
  return InstanceBundle{std::move(problem), std::move(truth), std::move(h)};
}

Json to_json(const SurjectivityReport& r) {
  Json j = {{"unital", r.unital},
            {"isometric_sa", r.isometric_sa},
            {"lower_bound_k", real(r.lower_bound_k)},
            {"corner_inclusion", r.corner_inclusion},
            {"range_rank", r.range_rank},
            {"codomain_dim", r.codomain_dim},
            {"verdict", to_string(r.verdict)},
            {"consistent", r.consistent},
            {"hypotheses", to_json(r.hypotheses)}};
  if (r.inverse) {
    j["inverse"] = to_json(*r.inverse);
  }
  if (r.inverse_battery) {
    j["inverse_battery"] = to_json(*r.inverse_battery);
  }
  return j;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("/", std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_canonical(const Json& j) {
  std::string out;
  dump(j, 0, out);
  out += "\n";
  return out;
}

}  // namespace projext
