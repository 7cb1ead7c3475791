// JSON / CSV / SVG emission. All JSON uses stable key order so reruns with
// identical inputs produce identical bytes.

#ifndef KZ_REPORT_HPP
#define KZ_REPORT_HPP

#include <string>

#include "json.hpp"
#include "kz/cyclic_cover.hpp"
#include "kz/gauss_word.hpp"
#include "kz/hodge_form.hpp"
#include "kz/kontsevich.hpp"
#include "kz/locus_z.hpp"
#include "kz/oseledets.hpp"

namespace kz {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kVersion = "kzc 0.3.0";

ojson to_json(const Origami& o);
Origami origami_from_json(const ojson& j);
ojson to_json(const CoverResult& c);
ojson to_json(const EigenData& e);
ojson to_json(const LyapunovReport& r);
ojson to_json(const SubspaceCheckReport& r);
ojson to_json(const SecondFundamentalFormMatrix& sf);
ojson to_json(const KontsevichReport& r);
ojson to_json(const ZCandidate& c, const ZValidation& v);
ZCandidate z_candidate_from_json(const ojson& j);

std::string trace_csv(const LyapunovReport& r);
// polyline plot of the running estimates, one path per (block, index)
std::string trace_svg(const LyapunovReport& r);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace kz

#endif
