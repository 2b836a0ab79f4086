#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "padic/enclosure.hpp"
#include "padic/lattice.hpp"
#include "padic/spectrum.hpp"

namespace padic {

/// %.17g; non-finite values become "inf", "-inf" or "nan".
std::string format_double(double value);

/// Compact JSON with every floating value printed to 17 significant digits.
/// Object keys come out sorted, so equal values give equal bytes.
std::string dump_json(const nlohmann::json &value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string dump_csv(const CsvTable &table);

/// Exact counts fit JSON numbers up to 2^64 - 1; larger ones are emitted as digit strings.
nlohmann::json count_json(Count value);

nlohmann::json to_json(const VerificationRecord &record);
nlohmann::json to_json(const Enclosure &enclosure);

} // namespace padic
