// Copyright 2026 The qpfrft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// JSON encoding of complex sequences. A signal file looks like
///
///     {"n": 2, "values": [[1, 0], [0, 0], [0, 0], [0, 0]]}
///
/// where "n" is optional and, when present, is the qubit count: the file
/// must then hold exactly 2^n values. Non-finite components are rejected.

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpfrft/error.hpp"
#include "qpfrft/numerics.hpp"

namespace qpfrft {

inline nlohmann::json complex_array_to_json(std::span<const Complex> values) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : values) arr.push_back({v.real(), v.imag()});
    return arr;
}

inline std::vector<Complex> complex_array_from_json(const nlohmann::json& arr, const std::string& field) {
    if (!arr.is_array()) throw FormatError("field '" + field + "' must be an array of [re, im] pairs");
    std::vector<Complex> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& pair = arr[i];
        const std::string where = field + "[" + std::to_string(i) + "]";
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw FormatError("field '" + where + "' must be a [re, im] pair of numbers");
        }
        const double re = pair[0].get<double>();
        const double im = pair[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("field '" + where + "' is not finite");
        out.emplace_back(re, im);
    }
    return out;
}

inline Signal signal_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw FormatError("signal document must be a JSON object");
    if (!doc.contains("values")) throw FormatError("missing field 'values'");
    Signal s{complex_array_from_json(doc.at("values"), "values")};
    if (s.size() == 0) throw FormatError("field 'values' is empty");
    if (doc.contains("n") && !doc.at("n").is_null()) {
        const auto& n = doc.at("n");
        if (!n.is_number_integer() || n.get<long long>() < 0 || n.get<long long>() > 40) {
            throw FormatError("field 'n' must be a non-negative integer qubit count");
        }
        const std::size_t expect = std::size_t{1} << n.get<long long>();
        if (s.size() != expect) {
            throw FormatError("field 'n' = " + std::to_string(n.get<long long>()) + " requires " +
                              std::to_string(expect) + " values, got " + std::to_string(s.size()));
        }
    }
    return s;
}

inline Signal parse_signal(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    return signal_from_json(doc);
}

inline Signal read_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_signal(buf.str());
}

inline nlohmann::json signal_to_json(const Signal& s) {
    nlohmann::json doc;
    if (is_pow2(s.size())) doc["n"] = log2_exact(s.size());
    doc["values"] = complex_array_to_json(s.values);
    return doc;
}

inline nlohmann::json spectrum_to_json(const Spectrum& s) {
    nlohmann::json doc;
    doc["alpha"] = s.alpha;
    doc["values"] = complex_array_to_json(s.values);
    return doc;
}

}  // namespace qpfrft
