#include "hypwave/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypwave/errors.hpp"

namespace hypwave {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void atomic_write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open for writing: " + tmp);
    out << text;
    if (!out.good()) throw DomainError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw DomainError("rename failed: " + path);
}

namespace {

std::string csv_body(const char* node_name, const std::vector<double>& nodes,
                     const std::vector<cplx>& values) {
  std::ostringstream out;
  out << node_name << ",re,im\n";
  for (size_t i = 0; i < nodes.size(); ++i) {
    out << format_double(nodes[i]) << ',' << format_double(values[i].real())
        << ',' << format_double(values[i].imag()) << '\n';
  }
  return out.str();
}

double parse_double(const std::string& tok, const std::string& where) {
  double v = 0.0;
  const char* b = tok.data();
  const auto res = std::from_chars(b, b + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != b + tok.size())
    throw DomainError("bad number '" + tok + "' in " + where);
  return v;
}

void read_csv_rows(const std::string& path, const std::string& want_header,
                   std::vector<double>* nodes, std::vector<cplx>* values) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != want_header)
    throw DomainError("expected header '" + want_header + "' in " + path);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, c))
      throw DomainError("malformed row '" + line + "' in " + path);
    nodes->push_back(parse_double(a, path));
    values->emplace_back(parse_double(b, path), parse_double(c, path));
  }
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& path) {
  json j = json::parse(read_all(path), nullptr, false);
  if (j.is_discarded()) throw DomainError("invalid JSON: " + path);
  return j;
}

std::vector<double> number_array(const json& j, const char* key,
                                 const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_array())
    throw DomainError(std::string("missing array '") + key + "' in " + path);
  std::vector<double> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_number())
      throw DomainError(std::string("non-numeric entry under '") + key +
                        "' in " + path);
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

const char* decay_class_name(DecayClass d) {
  switch (d) {
    case DecayClass::kCompact: return "compact";
    case DecayClass::kGaussian: return "gaussian";
    case DecayClass::kExponential: return "exponential";
  }
  return "gaussian";
}

DecayClass decay_class_from_name(const std::string& name) {
  if (name == "compact") return DecayClass::kCompact;
  if (name == "gaussian") return DecayClass::kGaussian;
  if (name == "exponential") return DecayClass::kExponential;
  throw DomainError("unknown decay class: " + name);
}

void write_radial_csv(const std::string& path, const RadialFunction& f) {
  f.validate();
  atomic_write_text(path, csv_body("r", f.grid, f.values));
}

RadialFunction read_radial_csv(const std::string& path) {
  RadialFunction f;
  read_csv_rows(path, "r,re,im", &f.grid, &f.values);
  f.decay = infer_decay_class(f.grid, f.values);
  f.validate();
  return f;
}

void write_spectral_csv(const std::string& path, const SpectralFunction& F) {
  F.validate();
  atomic_write_text(path, csv_body("lambda", F.grid.lambdas, F.values));
}

SpectralFunction read_spectral_csv(const std::string& path,
                                   const SpaceParams& sp) {
  SpectralFunction F;
  read_csv_rows(path, "lambda,re,im", &F.grid.lambdas, &F.values);
  const size_t m = F.grid.lambdas.size();
  if (m < 2) throw DomainError("spectral CSV needs at least two rows: " + path);
  F.grid.weights.resize(m);
  F.grid.plancherel.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const double lo = (i == 0) ? F.grid.lambdas[0] : F.grid.lambdas[i - 1];
    const double hi = (i + 1 == m) ? F.grid.lambdas[m - 1] : F.grid.lambdas[i + 1];
    F.grid.weights[i] = 0.5 * (hi - lo);
    F.grid.plancherel[i] = plancherel_density(sp, F.grid.lambdas[i]);
  }
  F.validate();
  return F;
}

void write_radial_json(const std::string& path, const RadialFunction& f) {
  f.validate();
  json j;
  j["kind"] = "radial";
  j["decay"] = decay_class_name(f.decay);
  j["r"] = f.grid;
  std::vector<double> re(f.values.size()), im(f.values.size());
  for (size_t i = 0; i < f.values.size(); ++i) {
    re[i] = f.values[i].real();
    im[i] = f.values[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  atomic_write_text(path, j.dump(1) + "\n");
}

RadialFunction read_radial_json(const std::string& path) {
  const json j = parse_json(path);
  if (j.value("kind", "") != std::string("radial"))
    throw DomainError("not a radial JSON payload: " + path);
  RadialFunction f;
  f.grid = number_array(j, "r", path);
  const auto re = number_array(j, "re", path);
  const auto im = number_array(j, "im", path);
  if (re.size() != f.grid.size() || im.size() != f.grid.size())
    throw DomainError("radial JSON arrays disagree in length: " + path);
  f.values.resize(re.size());
  for (size_t i = 0; i < re.size(); ++i) f.values[i] = cplx(re[i], im[i]);
  f.decay = decay_class_from_name(j.value("decay", "gaussian"));
  f.validate();
  return f;
}

void write_spectral_json(const std::string& path, const SpectralFunction& F) {
  F.validate();
  json j;
  j["kind"] = "spectral";
  j["lambda"] = F.grid.lambdas;
  j["weight"] = F.grid.weights;
  j["plancherel"] = F.grid.plancherel;
  std::vector<double> re(F.values.size()), im(F.values.size());
  for (size_t i = 0; i < F.values.size(); ++i) {
    re[i] = F.values[i].real();
    im[i] = F.values[i].imag();
  }
  j["re"] = re;
  j["im"] = im;
  atomic_write_text(path, j.dump(1) + "\n");
}

SpectralFunction read_spectral_json(const std::string& path) {
  const json j = parse_json(path);
  if (j.value("kind", "") != std::string("spectral"))
    throw DomainError("not a spectral JSON payload: " + path);
  SpectralFunction F;
  F.grid.lambdas = number_array(j, "lambda", path);
  F.grid.weights = number_array(j, "weight", path);
  F.grid.plancherel = number_array(j, "plancherel", path);
  const auto re = number_array(j, "re", path);
  const auto im = number_array(j, "im", path);
  if (re.size() != F.grid.lambdas.size() || im.size() != re.size() ||
      F.grid.weights.size() != re.size() || F.grid.plancherel.size() != re.size())
    throw DomainError("spectral JSON arrays disagree in length: " + path);
  F.values.resize(re.size());
  for (size_t i = 0; i < re.size(); ++i) F.values[i] = cplx(re[i], im[i]);
  F.validate();
  return F;
}

}  // namespace hypwave
