// Copyright 2026 The avired Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "avired/problem_io.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "avired/errors.h"

namespace avired {

namespace {

// Tokenizer that tracks line numbers for diagnostics.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string* token) {
    while (true) {
      if (pos_ >= line_.size()) {
        if (!std::getline(in_, line_)) return false;
        ++line_number_;
        pos_ = 0;
        continue;
      }
      while (pos_ < line_.size() && std::isspace(
                 static_cast<unsigned char>(line_[pos_]))) {
        ++pos_;
      }
      if (pos_ >= line_.size()) continue;
      size_t start = pos_;
      while (pos_ < line_.size() &&
             !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
        ++pos_;
      }
      *token = line_.substr(start, pos_ - start);
      return true;
    }
  }

  std::string expect(const std::string& what) {
    std::string tok;
    if (!next(&tok)) throw ParseError(line_number_, "expected " + what);
    return tok;
  }

  int expect_int(const std::string& what) {
    std::string tok = expect(what);
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line_number_, "expected integer for " + what +
                                         ", got '" + tok + "'");
    }
  }

  double expect_double(const std::string& what) {
    std::string tok = expect(what);
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      if (!std::isfinite(v)) {
        throw ParseError(line_number_, what + ": non-finite value '" + tok + "'");
      }
      return v;
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(line_number_, "expected number for " + what +
                                         ", got '" + tok + "'");
    }
  }

  void expect_keyword(const std::string& kw) {
    std::string tok = expect("keyword '" + kw + "'");
    if (tok != kw) {
      throw ParseError(line_number_,
                       "expected keyword '" + kw + "', got '" + tok + "'");
    }
  }

  int line_number() const { return line_number_; }

 private:
  std::istream& in_;
  std::string line_;
  size_t pos_ = 0;
  int line_number_ = 0;
};

Eigen::VectorXd read_vector(TokenReader& tr, const std::string& name, int len) {
  Eigen::VectorXd v(len);
  for (int i = 0; i < len; ++i) v[i] = tr.expect_double(name);
  return v;
}

Eigen::MatrixXd read_matrix(TokenReader& tr, const std::string& name, int rows,
                            int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = tr.expect_double(name);
  return m;
}

void write_values(std::ostream& out, const char* name,
                  const Eigen::MatrixXd& m) {
  out << name << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

}  // namespace

ProblemFile read_problem(std::istream& in) {
  TokenReader tr(in);
  tr.expect_keyword("avi-problem");
  const int version = tr.expect_int("format version");
  if (version != 1) {
    throw ParseError(tr.line_number(),
                     "unsupported version " + std::to_string(version));
  }
  tr.expect_keyword("n");
  const int n = tr.expect_int("n");
  if (n < 1) throw ParseError(tr.line_number(), "n must be >= 1");
  tr.expect_keyword("m");
  const int m = tr.expect_int("m");
  if (m < 0) throw ParseError(tr.line_number(), "m must be >= 0");

  tr.expect_keyword("M");
  Eigen::MatrixXd M = read_matrix(tr, "M", n, n);
  tr.expect_keyword("q");
  Eigen::VectorXd q = read_vector(tr, "q", n);
  tr.expect_keyword("A");
  Eigen::MatrixXd A = read_matrix(tr, "A", m, n);
  tr.expect_keyword("b");
  Eigen::VectorXd b = read_vector(tr, "b", m);
  tr.expect_keyword("lower");
  Eigen::VectorXd lower = read_vector(tr, "lower", n);
  tr.expect_keyword("upper");
  Eigen::VectorXd upper = read_vector(tr, "upper", n);

  ProblemFile pf;
  std::string tok;
  if (tr.next(&tok)) {
    if (tok != "reference_solution") {
      throw ParseError(tr.line_number(), "unexpected token '" + tok + "'");
    }
    pf.reference_solution = read_vector(tr, "reference_solution", n);
    if (tr.next(&tok)) {
      throw ParseError(tr.line_number(), "trailing content '" + tok + "'");
    }
  }

  try {
    pf.problem = make_avi(std::move(M), std::move(q),
                          make_polytope(std::move(A), std::move(b),
                                        std::move(lower), std::move(upper)));
  } catch (const std::exception& e) {
    throw ParseError(tr.line_number(), e.what());
  }
  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_problem(in);
}

void write_problem(std::ostream& out, const ProblemFile& pf) {
  const auto& avi = pf.problem;
  const int n = avi.dim();
  const int m = avi.K.rows();
  out << std::setprecision(17);
  out << "avi-problem 1\n";
  out << "n " << n << '\n';
  out << "m " << m << '\n';
  write_values(out, "M", avi.M);
  write_values(out, "q", avi.q);
  write_values(out, "A", avi.K.A);
  write_values(out, "b", avi.K.b);
  write_values(out, "lower", avi.K.lower);
  write_values(out, "upper", avi.K.upper);
  if (pf.reference_solution.has_value()) {
    write_values(out, "reference_solution", *pf.reference_solution);
  }
}

void write_problem_file(const std::string& path, const ProblemFile& pf) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot open '" + path + "' for writing");
  write_problem(out, pf);
}

}  // namespace avired
