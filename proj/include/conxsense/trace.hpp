// Copyright 2026 The ConXsense Authors.
//
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

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "conxsense/error.hpp"
#include "conxsense/time.hpp"

namespace conxsense {

// ---------------------------------------------------------------------------
// Record model
// ---------------------------------------------------------------------------

enum class RecordKind { gps = 0, wifi = 1, bt = 2, feedback = 3 };
inline constexpr std::size_t kRecordKindCount = 4;

enum class DeviceClass { mobile, other };
enum class MisuseLabel { safe, unsafe };
enum class ExposureLabel { home, work, public_place };

struct GpsObservation {
  Timestamp t;
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GpsObservation&, const GpsObservation&) = default;
};

struct WifiObservation {
  Timestamp t;
  std::string ap;

  friend bool operator==(const WifiObservation&, const WifiObservation&) = default;
};

struct BtObservation {
  Timestamp t;
  std::string dev;
  DeviceClass dev_class = DeviceClass::mobile;

  friend bool operator==(const BtObservation&, const BtObservation&) = default;
};

/// Ground-truth label given by the user for the current context.
struct FeedbackObservation {
  Timestamp t;
  std::optional<MisuseLabel> misuse;
  std::optional<ExposureLabel> exposure;

  friend bool operator==(const FeedbackObservation&, const FeedbackObservation&) = default;
};

using Record = std::variant<GpsObservation, WifiObservation, BtObservation, FeedbackObservation>;

inline Timestamp record_time(const Record& r) {
  return std::visit([](const auto& obs) { return obs.t; }, r);
}

inline RecordKind record_kind(const Record& r) { return static_cast<RecordKind>(r.index()); }

struct ObservationSequence {
  std::string user_id;
  std::vector<Record> records;

  friend bool operator==(const ObservationSequence&, const ObservationSequence&) = default;

  template <class Obs>
  std::vector<Obs> select() const {
    std::vector<Obs> out;
    for (const auto& r : records) {
      if (const auto* obs = std::get_if<Obs>(&r)) out.push_back(*obs);
    }
    return out;
  }

  std::vector<GpsObservation> gps() const { return select<GpsObservation>(); }
  std::vector<WifiObservation> wifi() const { return select<WifiObservation>(); }
  std::vector<BtObservation> bt() const { return select<BtObservation>(); }
  std::vector<FeedbackObservation> feedback() const { return select<FeedbackObservation>(); }

  /// Records with timestamp strictly before `t` (the sequence is sorted).
  ObservationSequence before(Timestamp t) const {
    ObservationSequence out{user_id, {}};
    for (const auto& r : records) {
      if (record_time(r) >= t) break;
      out.records.push_back(r);
    }
    return out;
  }

  /// Records with timestamp at or before `t`.
  ObservationSequence until(Timestamp t) const {
    ObservationSequence out{user_id, {}};
    for (const auto& r : records) {
      if (record_time(r) > t) break;
      out.records.push_back(r);
    }
    return out;
  }
};

/// Stable sort by (t, kind); equal keys keep their input order.
inline void sort_records(std::vector<Record>& records) {
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    return std::pair(record_time(a), a.index()) < std::pair(record_time(b), b.index());
  });
}

// ---------------------------------------------------------------------------
// Label vocabulary
// ---------------------------------------------------------------------------

inline std::string_view to_string(RecordKind k) {
  static constexpr std::array<std::string_view, kRecordKindCount> names{"gps", "wifi", "bt",
                                                                        "feedback"};
  return names[static_cast<std::size_t>(k)];
}

inline std::string_view to_string(DeviceClass c) {
  return c == DeviceClass::mobile ? "mobile" : "other";
}

inline std::string_view to_string(MisuseLabel m) {
  return m == MisuseLabel::safe ? "safe" : "unsafe";
}

inline std::string_view to_string(ExposureLabel e) {
  switch (e) {
    case ExposureLabel::home: return "home";
    case ExposureLabel::work: return "work";
    case ExposureLabel::public_place: return "public";
  }
  return "public";
}

inline std::optional<DeviceClass> parse_device_class(std::string_view s) {
  if (s == "mobile") return DeviceClass::mobile;
  if (s == "other") return DeviceClass::other;
  return std::nullopt;
}

inline std::optional<MisuseLabel> parse_misuse(std::string_view s) {
  if (s == "safe") return MisuseLabel::safe;
  if (s == "unsafe") return MisuseLabel::unsafe;
  return std::nullopt;
}

inline std::optional<ExposureLabel> parse_exposure(std::string_view s) {
  if (s == "home") return ExposureLabel::home;
  if (s == "work") return ExposureLabel::work;
  if (s == "public") return ExposureLabel::public_place;
  return std::nullopt;
}

/// Canonical access-point id: lowercase, colon-separated hex octets.
/// Accepts ':' or '-' separators or 12 bare hex digits.
inline std::optional<std::string> normalize_mac(std::string_view raw) {
  std::string hex;
  std::size_t separators = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == ':' || c == '-') {
      if (hex.size() % 2 != 0 || hex.empty()) return std::nullopt;
      ++separators;
      continue;
    }
    if (!std::isxdigit(static_cast<unsigned char>(c))) return std::nullopt;
    hex.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (hex.size() != 12 || (separators != 0 && separators != 5)) return std::nullopt;
  std::string out;
  for (std::size_t i = 0; i < 12; i += 2) {
    if (!out.empty()) out.push_back(':');
    out.append(hex, i, 2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON Lines codec
// ---------------------------------------------------------------------------

enum class ParseMode { lenient, strict };

struct ParseOptions {
  ParseMode mode = ParseMode::lenient;
  std::string user_id;
};

struct MalformedLine {
  std::size_t line_no = 0;
  std::string reason;
};

struct ParseResult {
  ObservationSequence sequence;
  std::vector<MalformedLine> malformed;
};

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing '") + key + "'");
  if (!it->is_number()) throw std::invalid_argument(std::string("'") + key + "' is not a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("'") + key + "' is not finite");
  return v;
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument(std::string("missing '") + key + "'");
  if (!it->is_string()) throw std::invalid_argument(std::string("'") + key + "' is not a string");
  return it->get<std::string>();
}

template <class Parse>
auto optional_label(const nlohmann::json& j, const char* key, Parse parse)
    -> decltype(parse(std::string_view{})) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw std::invalid_argument(std::string("'") + key + "' is not a string");
  auto v = parse(it->get<std::string>());
  if (!v) throw std::invalid_argument(std::string("unknown ") + key + " label '" +
                                      it->get<std::string>() + "'");
  return v;
}

inline Record decode_record(std::string_view line) {
  const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw std::invalid_argument("invalid JSON");
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");

  const std::string kind = require_string(j, "kind");
  const double t = require_number(j, "t");
  if (t < 0.0) throw std::invalid_argument("negative timestamp");
  const Timestamp ts = from_seconds(t);

  if (kind == "gps") {
    const double lat = require_number(j, "lat");
    const double lon = require_number(j, "lon");
    if (lat < -90.0 || lat > 90.0) throw std::invalid_argument("latitude out of range");
    if (lon < -180.0 || lon > 180.0) throw std::invalid_argument("longitude out of range");
    return GpsObservation{ts, lat, lon};
  }
  if (kind == "wifi") {
    const std::string ap = require_string(j, "ap");
    auto mac = normalize_mac(ap);
    if (!mac) throw std::invalid_argument("'" + ap + "' is not a MAC address");
    return WifiObservation{ts, std::move(*mac)};
  }
  if (kind == "bt") {
    std::string dev = require_string(j, "dev");
    if (dev.empty()) throw std::invalid_argument("empty device id");
    const auto cls = parse_device_class(require_string(j, "dev_class"));
    if (!cls) throw std::invalid_argument("unknown dev_class");
    return BtObservation{ts, std::move(dev), *cls};
  }
  if (kind == "feedback") {
    FeedbackObservation fb{ts, optional_label(j, "misuse", parse_misuse),
                           optional_label(j, "exposure", parse_exposure)};
    if (!fb.misuse && !fb.exposure) throw std::invalid_argument("feedback carries no label");
    return fb;
  }
  throw std::invalid_argument("unknown kind '" + kind + "'");
}

}  // namespace detail

/// Parses a JSON Lines trace. Output records are stably sorted by
/// (t, kind, line number). Blank lines are skipped.
inline ParseResult parse_trace(std::istream& in, const ParseOptions& options = {}) {
  ParseResult result;
  result.sequence.user_id = options.user_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; })) {
      continue;
    }
    try {
      result.sequence.records.push_back(detail::decode_record(line));
    } catch (const std::invalid_argument& e) {
      if (options.mode == ParseMode::strict) throw MalformedRecord(line_no, e.what());
      result.malformed.push_back({line_no, e.what()});
    }
  }
  if (result.sequence.records.empty()) throw EmptyTrace();
  sort_records(result.sequence.records);
  return result;
}

inline ParseResult parse_trace(std::string_view text, const ParseOptions& options = {}) {
  std::istringstream in{std::string(text)};
  return parse_trace(in, options);
}

inline nlohmann::ordered_json encode_record(const Record& r) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(record_kind(r));
  j["t"] = to_seconds(record_time(r));
  std::visit(
      [&j](const auto& obs) {
        using T = std::decay_t<decltype(obs)>;
        if constexpr (std::is_same_v<T, GpsObservation>) {
          j["lat"] = obs.lat;
          j["lon"] = obs.lon;
        } else if constexpr (std::is_same_v<T, WifiObservation>) {
          j["ap"] = obs.ap;
        } else if constexpr (std::is_same_v<T, BtObservation>) {
          j["dev"] = obs.dev;
          j["dev_class"] = to_string(obs.dev_class);
        } else {
          j["misuse"] = obs.misuse ? nlohmann::ordered_json(to_string(*obs.misuse)) : nullptr;
          j["exposure"] =
              obs.exposure ? nlohmann::ordered_json(to_string(*obs.exposure)) : nullptr;
        }
      },
      r);
  return j;
}

inline void write_trace(std::ostream& out, const ObservationSequence& seq) {
  for (const auto& r : seq.records) out << encode_record(r).dump() << '\n';
}

inline std::string serialize_trace(const ObservationSequence& seq) {
  std::ostringstream out;
  write_trace(out, seq);
  return out.str();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct DuplicateRecord {
  RecordKind kind;
  Timestamp t;
};

struct ObservationGap {
  RecordKind kind;
  Timestamp from;
  Timestamp to;
};

/// Report over a sequence. GPS and feedback duplicates are repeated
/// timestamps; WiFi and BT duplicates are repeated (t, id) pairs because a
/// single scan legitimately yields several records at one timestamp. Gaps are
/// measured between distinct timestamps of each sensor kind.
struct ValidationReport {
  std::array<std::size_t, kRecordKindCount> counts{};
  std::vector<DuplicateRecord> duplicates;
  std::vector<ObservationGap> gaps;
  std::size_t out_of_order = 0;

  std::size_t count(RecordKind k) const { return counts[static_cast<std::size_t>(k)]; }
};

inline ValidationReport validate_sequence(const ObservationSequence& seq,
                                          Duration gap_threshold = std::chrono::minutes{5}) {
  ValidationReport report;
  std::array<std::optional<Timestamp>, kRecordKindCount> last_t;
  std::set<std::tuple<std::size_t, Timestamp, std::string>> seen;
  std::optional<Timestamp> prev;

  for (const auto& r : seq.records) {
    const Timestamp t = record_time(r);
    const auto k = r.index();
    ++report.counts[k];
    if (prev && t < *prev) ++report.out_of_order;
    prev = t;

    std::string id;
    if (const auto* w = std::get_if<WifiObservation>(&r)) id = w->ap;
    if (const auto* b = std::get_if<BtObservation>(&r)) id = b->dev;
    if (!seen.emplace(k, t, id).second) {
      report.duplicates.push_back({record_kind(r), t});
    }

    if (record_kind(r) != RecordKind::feedback) {
      if (last_t[k] && t != *last_t[k] && t - *last_t[k] > gap_threshold) {
        report.gaps.push_back({record_kind(r), *last_t[k], t});
      }
      last_t[k] = t;
    }
  }
  return report;
}

}  // namespace conxsense
