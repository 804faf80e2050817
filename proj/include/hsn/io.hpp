#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsn/coefficients.hpp"
#include "hsn/halfspace.hpp"
#include "hsn/norms.hpp"
#include "hsn/verify.hpp"

namespace hsn {

/// Small JSON document tree with a canonical serializer: object keys are
/// kept sorted (std::map), floats print as %.17g, layout is fixed, so two
/// dumps of equal documents are byte-identical.
struct Json {
  enum class Kind { null_v, bool_v, int_v, num_v, str_v, arr_v, obj_v };
  Kind kind = Kind::null_v;
  bool b = false;
  long long i = 0;
  double num = 0;
  std::string str;
  std::vector<Json> arr;
  std::map<std::string, Json> obj;

  static Json boolean(bool v);
  static Json integer(long long v);
  static Json number(double v);  ///< non-finite values become "inf"/"-inf"/"nan" strings
  static Json string(std::string v);
  static Json array();
  static Json object();

  Json& operator[](const std::string& key);  ///< object access, creates entries

  std::string dump() const;  ///< canonical text, trailing newline
};

/// %.17g rendering used by every serializer.
std::string format_double(double v);

/// FNV-1a 64-bit of a byte string, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

/// CSV schema: header "xi_1,..,xi_n,weight,<P>0_re,<P>0_im,..", one sample
/// per row, %.17g everywhere. The payload column prefix <P> is free but must
/// be consistent; arity and n are inferred from the header and validated
/// against the expectations when those are nonnegative. Rows with zero
/// frequency or non-finite values are rejected with their line number.
FrequencyField read_frequency_field(const std::string& path, int expected_arity = -1,
                                    int expected_n = -1);
void write_frequency_field(const std::string& path, const FrequencyField& field,
                           const std::string& payload_prefix);

/// Coefficient tensors as JSON: {"m","n","indices","real","imag"} with the
/// matrix in the canonical multiindex enumeration order.
CoefTensor read_tensor(const std::string& path);
void write_tensor(const std::string& path, const CoefTensor& t);

Json norm_report_json(const NormReport& rep);
NormReport read_norm_report(const std::string& path);

Json sweep_report_json(const SweepReport& rep);
/// CSV sidecar: header "value,sigma_ratio,lambda_slice", one line per value.
void write_sweep_csv(const std::string& path, const SweepReport& rep);

/// Every output directory gets exactly one manifest echoing the resolved
/// configuration, tool and library versions, and input-file hashes. The
/// generated_at stamp is informational and excluded from reproducibility
/// comparisons, which cover the data artifacts.
Json make_manifest(const Json& resolved_config,
                   const std::vector<std::pair<std::string, std::string>>& input_hashes);

}  // namespace hsn
