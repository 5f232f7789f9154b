#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lossless/matrix.hpp"
#include "lossless/random.hpp"

namespace testing_support {

using lossless::Matrix;

/// Matrix from a '+', '*', '0' template ('|' and spaces ignored).
inline Matrix from_template(const std::vector<std::string>& rows,
                            double plus = 1.0, double star = 0.0) {
  std::vector<std::string> clean;
  for (const auto& r : rows) {
    std::string c;
    for (char ch : r) {
      if (ch == '+' || ch == '*' || ch == '0') c += ch;
    }
    clean.push_back(c);
  }
  Matrix m(clean.size(), clean.front().size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    for (std::size_t j = 0; j < clean[i].size(); ++j) {
      const char ch = clean[i][j];
      m(i, j) = ch == '+' ? plus : ch == '*' ? star : 0.0;
    }
  }
  return m;
}

/// Same, with '*' drawn from N(0,1) and '+' from [0.5, 1.5).
inline Matrix random_from_template(const std::vector<std::string>& rows,
                                   lossless::random::Rng& rng) {
  Matrix m = from_template(rows, 1.0, 2.0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 1.0) m(i, j) = 0.5 + rng.uniform();
      else if (m(i, j) == 2.0) m(i, j) = rng.normal();
    }
  }
  return m;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string data_path(const std::string& rel) {
  return std::string(LOSSLESS_TEST_DATA) + "/" + rel;
}

}  // namespace testing_support
