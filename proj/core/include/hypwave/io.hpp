#pragma once

#include <string>

#include "hypwave/function.hpp"

namespace hypwave {

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

// Write text to path via a temporary file plus rename, so readers never see
// a partially written file.
void atomic_write_text(const std::string& path, const std::string& text);

// CSV contract: header "r,re,im" (radial) or "lambda,re,im" (spectral),
// one row per node. JSON carries the full payload (decay tag, quadrature
// weights, Plancherel samples); CSV keeps only the columns above, so the
// spectral CSV reader rebuilds trapezoid weights and the Plancherel density
// from the dimension.
void write_radial_csv(const std::string& path, const RadialFunction& f);
RadialFunction read_radial_csv(const std::string& path);

void write_spectral_csv(const std::string& path, const SpectralFunction& F);
SpectralFunction read_spectral_csv(const std::string& path, const SpaceParams& sp);

void write_radial_json(const std::string& path, const RadialFunction& f);
RadialFunction read_radial_json(const std::string& path);

void write_spectral_json(const std::string& path, const SpectralFunction& F);
SpectralFunction read_spectral_json(const std::string& path);

const char* decay_class_name(DecayClass d);
DecayClass decay_class_from_name(const std::string& name);

}  // namespace hypwave
