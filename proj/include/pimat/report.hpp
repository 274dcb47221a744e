#pragma once

// Text and JSON renderings of search results. JSON field names are stable;
// the text layout is for people and may change.

#include "pimat/glrep.hpp"
#include "pimat/search.hpp"

#include "json.hpp"
#include <string>

namespace pimat {

using Json = nlohmann::ordered_json;

Json to_json(const RankCertificate& c);
Json to_json(const SearchReport& r);
Json to_json(const MultilinearReport& r);
Json to_json(const CentralCheck& c);
Json to_json(const SweepReport& r);
Json to_json(const HwvSpace& s);

std::string render_text(const SearchReport& r);
std::string render_text(const MultilinearReport& r);
std::string render_text(const CentralCheck& c);
std::string render_text(const SweepReport& r);
/// Count followed by one candidate per line.
std::string render_text(const HwvSpace& s);

}  // namespace pimat
