#pragma once
// Algebra documents (JSON, schema 1): export, import with validation.

#include <stdexcept>
#include <string>

#include "nisforge/forms.hpp"

namespace nisforge {

// every schema violation carries a one-line remedy
struct DocumentError : std::runtime_error {
  std::string remedy;
  DocumentError(const std::string& what, std::string fix) : std::runtime_error(what), remedy(std::move(fix)) {}
};

// optional payloads carried next to the algebra
struct NamedMatrix {
  Mat m;
  int parity = 0;
};

struct AlgebraDocument {
  SuperAlgebra alg;
  std::vector<BilinearForm> forms;         // "forms": [{"parity", "gram": [[i, j, s], ...]}]
  std::vector<NamedMatrix> derivations;    // "derivations": [{"parity", "matrix": [[i, j, s], ...]}]
};

nlohmann::json field_json(const Field& F);
Field field_from_json(const nlohmann::json& j);

nlohmann::json document_json(const AlgebraDocument& d);
AlgebraDocument document_from_json(const nlohmann::json& j);

// canonical text: sorted keys, two-space indent, trailing newline
std::string document_text(const AlgebraDocument& d);
AlgebraDocument read_document(const std::string& path);
void write_document(const AlgebraDocument& d, const std::string& path);

nlohmann::json sparse_json(const Mat& m);
Mat sparse_from_json(const Field& F, const nlohmann::json& j, int rows, int cols, const std::string& where);

}  // namespace nisforge
