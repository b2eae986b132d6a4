#pragma once

// MatrixFile JSON: {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}.
// Doubles are written in shortest round-trip form, so write -> read is
// bit-exact for every finite value.

#include "ginvkit/additive.hpp"
#include "ginvkit/block.hpp"
#include "ginvkit/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace ginv::io {

/// Malformed matrix document; field() names the offending member, e.g.
/// "data[1][0]".
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, std::string detail)
      : std::runtime_error(field + ": " + detail),
        field_(std::move(field)),
        detail_(std::move(detail)) {}
  const std::string& field() const { return field_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

nlohmann::json to_json(const CMatrix& m);
CMatrix from_json(const nlohmann::json& doc);

/// Throws std::runtime_error on I/O failure, FormatError on bad content.
CMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const CMatrix& m);

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const AxiomCheck& c);
nlohmann::json to_json(const SumGinvReport& r);
nlohmann::json to_json(const AutoSumReport& r);
nlohmann::json to_json(const BlockGinvReport& r);
nlohmann::json to_json(const AutoBlockReport& r);

}  // namespace ginv::io
