#pragma once

#include <string>

#include "json.hpp"
#include "kwright/kwright.hpp"

namespace kwright::io {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent JSON input (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Complex numbers are written as [re, im]; a bare number reads as real.
json to_json(Complex z);
Complex complex_from_json(const json& j, const char* what);

/// {"k": k, "upper": [[a_re, a_im, alpha], ...], "lower": [[b_re, b_im, beta], ...]}
json to_json(const WrightParams& p);
WrightParams wright_params_from_json(const json& j);

/// {"source", "prefactor_k_exp", "x_exponent", "argument_sign": "+"|"-", "params",
///  "a", "mu", "near_boundary"}; "a" and "mu" default to 1 when absent.
json to_json(const TransformedWright& t);
TransformedWright transformed_from_json(const json& j);

/// {"alpha", "alpha_prime", "beta", "beta_prime", "gamma", "side", "kind"}.
json to_json(const MSMParams& op);
MSMParams msm_from_json(const json& j);
/// {"alpha", "beta", "gamma", "side", "kind"}.
SaigoParams saigo_from_json(const json& j);
/// {"alpha", "gamma", "side", "kind"}.
EKParams ek_from_json(const json& j);

/// {"rho", "mu", "a"}; mu defaults to 1 and a to 0.
PowerWeight weight_from_json(const json& j);

Side side_from_string(const std::string& s);
OpKind kind_from_string(const std::string& s);

json parse_text(const std::string& text);
json read_file(const std::string& path);

}  // namespace kwright::io
