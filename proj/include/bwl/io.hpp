#pragma once

// File formats. JSON numbers are written in shortest round-trip form, CSV
// numbers with 17 significant digits; both reload bit-exactly.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bwl/classify.hpp"
#include "bwl/geometry.hpp"

namespace bwl {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Matrices ----------------------------------------------------------------

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const Json& e = j.at("entries");
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(e.size()) != rows * cols)
      throw InvalidInput("matrix JSON: expected " + std::to_string(rows * cols) + " entries, found " +
                         std::to_string(e.size()));
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index c = 0; c < cols; ++c) {
        const Json& z = e.at(static_cast<std::size_t>(i * cols + c));
        if (!z.is_array() || z.size() != 2) throw InvalidInput("matrix JSON: entries must be [re, im] pairs");
        m(i, c) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    return m;
  } catch (const Json::exception& ex) {
    throw InvalidInput(std::string("matrix JSON: ") + ex.what());
  }
}

inline std::string complex_cell(Complex z) {
  std::string s = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im)) s += format_double(im);
  else s += "+" + format_double(im);
  return s + "j";
}

inline std::string matrix_to_csv(const ComplexMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += complex_cell(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline Complex parse_complex_cell(const std::string& cell) {
  if (cell.empty() || cell.back() != 'j') throw InvalidInput("CSV cell '" + cell + "' is not of the form re+imj");
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t i = cell.size() - 1; i > 0; --i)
    if ((cell[i] == '+' || cell[i] == '-') && cell[i - 1] != 'e' && cell[i - 1] != 'E') {
      split = i;
      break;
    }
  if (split == std::string::npos) throw InvalidInput("CSV cell '" + cell + "' has no imaginary part");
  try {
    return {std::stod(cell.substr(0, split)), std::stod(cell.substr(split, cell.size() - split - 1))};
  } catch (const std::exception&) {
    throw InvalidInput("CSV cell '" + cell + "' is not numeric");
  }
}

inline ComplexMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Complex> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_complex_cell(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw InvalidInput("matrix CSV: ragged rows");
    rows.push_back(std::move(row));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()),
                  rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline Json complex_vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

inline ComplexVector complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != 2) throw InvalidInput("expected [re, im] pairs");
    v(static_cast<Eigen::Index>(i)) = Complex(j[i][0].get<double>(), j[i][1].get<double>());
  }
  return v;
}

// Witness records ---------------------------------------------------------

inline Json to_json(const WitnessRecord& r) {
  Json j{{"n", r.n()}, {"alpha", r.alpha.values()}, {"c", complex_vector_to_json(r.c().c)},
         {"provenance", std::string(to_string(r.provenance))}};
  if (r.provenance == Provenance::FromTorus) {
    j["phases"] = r.phases;
    if (r.sign) j["sign"] = *r.sign;
  }
  if (!r.name.empty()) j["name"] = r.name;
  return j;
}

/// Rebuilds the record from "alpha"; "c", when present, must agree with it.
inline WitnessRecord record_from_json(const Json& j, const ToleranceConfig& tol = default_tolerances()) {
  try {
    const int n = j.at("n").get<int>();
    AlphaVector alpha(j.at("alpha").get<std::vector<double>>(), tol);
    if (alpha.n() != n) throw InvalidInput("record: alpha has length " + std::to_string(alpha.n()) + ", n = " +
                                           std::to_string(n));
    if (j.contains("c")) {
      const ComplexVector c = complex_vector_from_json(j.at("c"));
      const ComplexVector expect = alpha_to_c(alpha).c;
      if (c.size() != n) throw InvalidInput("record: c has the wrong length");
      const double d = (c - expect).cwiseAbs().maxCoeff();
      if (d > 1e-8 * std::max(1.0, expect.cwiseAbs().maxCoeff()))
        throw InvalidInput("record: c is not the DFT of alpha (deviation " + format_double(d) + ")");
    }
    const Provenance p = j.contains("provenance")
                             ? provenance_from_string(j.at("provenance").get<std::string>())
                             : Provenance::FromAlpha;
    WitnessRecord r = make_record(std::move(alpha), p);
    if (j.contains("phases")) r.phases = j.at("phases").get<std::vector<double>>();
    if (j.contains("sign")) r.sign = j.at("sign").get<int>();
    if (j.contains("name")) r.name = j.at("name").get<std::string>();
    return r;
  } catch (const Json::exception& ex) {
    throw InvalidInput(std::string("record JSON: ") + ex.what());
  }
}

// Verdicts ----------------------------------------------------------------

inline Json product_certificate_to_json(const ProductCertificate& c) {
  return {{"x", complex_vector_to_json(c.x)}, {"y", complex_vector_to_json(c.y)}, {"value", c.value}};
}

inline Json to_json(const PositivityVerdict& v) {
  Json j{{"block_positive", std::string(to_string(v.block_positive))},
         {"cp", v.is_cp},
         {"method", std::string(to_string(v.method))}};
  j["decomposable"] = v.decomposable ? Json(*v.decomposable) : Json(nullptr);
  if (v.optimal) j["optimal"] = *v.optimal;
  j["class"] = std::string(to_string(witness_class(v)));
  if (v.certificate) j["certificate"] = product_certificate_to_json(*v.certificate);
  return j;
}

// Orthogonal profiles -----------------------------------------------------

inline Json to_json(const StochasticProfile& p, const ToleranceConfig& tol = default_tolerances()) {
  Json rows = Json::array();
  for (int i = 0; i < p.n(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(p.n()));
    for (int k = 0; k < p.n(); ++k) row[k] = p.a(i, k);
    rows.push_back(row);
  }
  return {{"n", p.n()}, {"a", std::move(rows)}, {"circulant", p.circulant_defect() <= tol.circulant},
          {"gram_ok", gram_condition(p, tol.gram)}};
}

// Certificates ------------------------------------------------------------

/// Every certificate carries W so that it re-verifies from the file alone.
inline Json certificate_to_json(const Certificate& cert, const BipartiteOperator& w) {
  Json j;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DecompositionCertificate>) {
          j = {{"type", "decomposition"}, {"n", w.dim()}, {"w", matrix_to_json(w.matrix())},
               {"p", matrix_to_json(c.p.matrix())}, {"q", matrix_to_json(c.q.matrix())},
               {"residual", c.residual}, {"min_eig_p", c.min_eig_p}, {"min_eig_q", c.min_eig_q}};
          if (!c.circulant_row.empty()) {
            j["circulant_row"] = c.circulant_row;
            j["circulant_eigenvalues"] = c.circulant_eigenvalues;
          }
        } else if constexpr (std::is_same_v<T, PPTCertificate>) {
          j = {{"type", "ppt"}, {"n", w.dim()}, {"k", c.k}, {"epsilon", c.epsilon},
               {"w", matrix_to_json(w.matrix())}, {"rho", matrix_to_json(c.rho.matrix())},
               {"pairing", c.pairing}, {"pairing_closed_form", c.closed_form},
               {"min_eig_rho", c.min_eig_rho}, {"min_eig_rho_pt", c.min_eig_rho_pt}};
        } else {
          j = {{"type", "product"}, {"n", w.dim()}, {"w", matrix_to_json(w.matrix())}};
          j.update(product_certificate_to_json(c));
        }
      },
      cert);
  return j;
}

struct CertificateCheck {
  std::string type;
  bool ok = false;
  std::string detail;
};

/// Re-checks a certificate file using only the matrices and vectors it holds.
inline CertificateCheck verify_certificate_json(const Json& j, const ToleranceConfig& tol = default_tolerances()) {
  try {
    const std::string type = j.at("type").get<std::string>();
    const int n = j.at("n").get<int>();
    const BipartiteOperator w(n, matrix_from_json(j.at("w")));
    CertificateCheck out{type, false, {}};
    if (type == "decomposition") {
      const BipartiteOperator p(n, matrix_from_json(j.at("p")));
      const BipartiteOperator q(n, matrix_from_json(j.at("q")));
      const double residual = (w.matrix() - p.matrix() - partial_transpose(q).matrix()).norm();
      const double ep = min_eigenvalue(p), eq = min_eigenvalue(q);
      out.ok = residual <= tol.certificate && ep >= -tol.certificate && eq >= -tol.certificate;
      out.detail = "residual " + format_double(residual) + ", min eig P " + format_double(ep) + ", min eig Q " +
                   format_double(eq);
    } else if (type == "ppt") {
      const BipartiteOperator rho(n, matrix_from_json(j.at("rho")));
      const double pairing = (rho.matrix() * w.matrix()).trace().real();
      const double er = min_eigenvalue(rho), ept = min_eigenvalue(partial_transpose(rho));
      out.ok = er >= -tol.certificate && ept >= -tol.certificate && pairing < -tol.certificate;
      out.detail = "pairing " + format_double(pairing) + ", min eig rho " + format_double(er) +
                   ", min eig rho^T_B " + format_double(ept);
    } else if (type == "product") {
      const ComplexVector x = complex_vector_from_json(j.at("x"));
      const ComplexVector y = complex_vector_from_json(j.at("y"));
      if (x.size() != n || y.size() != n) throw InvalidInput("product certificate: vectors must have length n");
      const double value = product_expectation(w, x, y) / (x.squaredNorm() * y.squaredNorm());
      out.ok = value < -tol.certificate;
      out.detail = "normalized expectation " + format_double(value);
    } else {
      throw InvalidInput("unknown certificate type '" + type + "'");
    }
    return out;
  } catch (const Json::exception& ex) {
    throw InvalidInput(std::string("certificate JSON: ") + ex.what());
  }
}

// Scan CSV ----------------------------------------------------------------

inline std::string scan_csv_header(int n) {
  std::string h = "n";
  for (int i = 1; i <= torus_phase_count(n); ++i) h += ",phi_" + std::to_string(i);
  h += ",sign";
  for (int k = 0; k < n; ++k) h += ",alpha_" + std::to_string(k);
  for (int k = 0; k < n; ++k) h += ",c_re_" + std::to_string(k) + ",c_im_" + std::to_string(k);
  return h + ",verdict,decomposable,gram_ok,on_sphere\n";
}

inline std::string scan_csv_row(const ScanRow& r) {
  std::string s = std::to_string(r.n);
  for (double p : r.phases) s += "," + format_double(p);
  s += "," + std::to_string(r.sign);
  for (double a : r.alpha.values()) s += "," + format_double(a);
  for (Eigen::Index k = 0; k < r.c.size(); ++k)
    s += "," + format_double(r.c(k).real()) + "," + format_double(r.c(k).imag());
  s += ",";
  s += to_string(r.verdict);
  s += r.decomposable ? (*r.decomposable ? ",true" : ",false") : ",";
  s += r.gram_ok ? ",true" : ",false";
  s += r.on_sphere ? ",true" : ",false";
  return s + "\n";
}

inline std::string scan_csv(int n, const std::vector<ScanRow>& rows) {
  std::string out = scan_csv_header(n);
  for (const auto& r : rows) out += scan_csv_row(r);
  return out;
}

// Files -------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + ex.what());
  }
}

}  // namespace bwl
