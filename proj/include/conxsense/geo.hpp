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

#include <cmath>
#include <numbers>

namespace conxsense::geo {

inline constexpr double kEarthRadiusM = 6'371'000.0;

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const LatLon&, const LatLon&) = default;
};

/// Equirectangular distance in meters. Accurate to well under a meter at the
/// few-hundred-meter scales used for stay points and CoI rectangles.
inline double distance_m(LatLon a, LatLon b) {
  const double mean_lat = deg2rad((a.lat + b.lat) / 2.0);
  const double x = deg2rad(b.lon - a.lon) * std::cos(mean_lat);
  const double y = deg2rad(b.lat - a.lat);
  return kEarthRadiusM * std::sqrt(x * x + y * y);
}

/// North-south extent of a latitude span, in meters.
inline double lat_span_m(double lat_min, double lat_max) {
  return deg2rad(lat_max - lat_min) * kEarthRadiusM;
}

/// East-west extent of a longitude span measured at the given latitude.
inline double lon_span_m(double lon_min, double lon_max, double at_lat) {
  return deg2rad(lon_max - lon_min) * std::cos(deg2rad(at_lat)) * kEarthRadiusM;
}

/// Moves a point by (north, east) meters.
inline LatLon offset(LatLon p, double north_m, double east_m) {
  const double dlat = rad2deg(north_m / kEarthRadiusM);
  const double dlon = rad2deg(east_m / (kEarthRadiusM * std::cos(deg2rad(p.lat))));
  return {p.lat + dlat, p.lon + dlon};
}

}  // namespace conxsense::geo
