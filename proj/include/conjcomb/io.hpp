#pragma once

// JSON and CSV serialization.  Matrices serialize as
// {rows, cols, re: [...], im: [...]} with row-major entry order; states as
// {dims, re, im}; channels as {dimIn, dimOut, kraus: [matrix...]}.  All
// floating-point output is rounded to 12 significant digits so identical
// runs produce byte-identical files.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conjcomb/channel.hpp"
#include "conjcomb/conjugation.hpp"
#include "conjcomb/nogo.hpp"
#include "conjcomb/tensor.hpp"

namespace conjcomb {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

// Round to 12 significant digits (the library-wide report precision).
inline double round_sig(double x) {
  return std::strtod(format_double(x).c_str(), nullptr);
}

inline Json matrix_to_json(const CMat& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      re.push_back(round_sig(m(r, c).real()));
      im.push_back(round_sig(m(r, c).imag()));
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline CMat matrix_from_json(const Json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("matrix_from_json: nonpositive dimensions");
  if (static_cast<Index>(re.size()) != rows * cols ||
      static_cast<Index>(im.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: entry count does not match rows*cols");
  CMat m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) {
      const std::size_t t = static_cast<std::size_t>(r * cols + c);
      m(r, c) = Complex(re[t].get<double>(), im[t].get<double>());
    }
  if (!m.allFinite())
    throw std::invalid_argument("matrix_from_json: non-finite entries");
  return m;
}

inline Json state_to_json(const StateVector& v) {
  Json j;
  j["dims"] = v.dims;
  std::vector<double> re, im;
  for (Index i = 0; i < v.amps.size(); ++i) {
    re.push_back(round_sig(v.amps[i].real()));
    im.push_back(round_sig(v.amps[i].imag()));
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline StateVector state_from_json(const Json& j) {
  const std::vector<Index> dims = j.at("dims").get<std::vector<Index>>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != im.size())
    throw std::invalid_argument("state_from_json: re/im length mismatch");
  CVec amps(static_cast<Index>(re.size()));
  for (Index i = 0; i < amps.size(); ++i)
    amps[i] = Complex(re[static_cast<std::size_t>(i)].get<double>(),
                      im[static_cast<std::size_t>(i)].get<double>());
  return StateVector(dims, std::move(amps));
}

inline Json channel_to_json(const KrausChannel& ch) {
  Json j;
  j["dimIn"] = ch.dimIn;
  j["dimOut"] = ch.dimOut;
  Json ks = Json::array();
  for (const CMat& k : ch.kraus) ks.push_back(matrix_to_json(k));
  j["kraus"] = std::move(ks);
  return j;
}

inline KrausChannel channel_from_json(const Json& j) {
  const Index dimIn = j.at("dimIn").get<Index>();
  const Index dimOut = j.at("dimOut").get<Index>();
  std::vector<CMat> ks;
  for (const Json& k : j.at("kraus")) ks.push_back(matrix_from_json(k));
  return KrausChannel(dimIn, dimOut, std::move(ks));
}

inline Json choi_to_json(const ChoiOperator& c) {
  Json j;
  j["dimIn"] = c.dimIn;
  j["dimOut"] = c.dimOut;
  j["matrix"] = matrix_to_json(c.matrix);
  return j;
}

inline Json twirl_to_json(const TwirlDecomposition& t) {
  Json j;
  j["pSS"] = round_sig(t.pSS);
  j["pSA"] = round_sig(t.pSA);
  j["pAS"] = round_sig(t.pAS);
  j["pAA"] = round_sig(t.pAA);
  j["residualNorm"] = round_sig(t.residualNorm);
  return j;
}

inline std::string twirl_to_csv(const TwirlDecomposition& t) {
  std::string s = "pSS,pSA,pAS,pAA,residualNorm\n";
  s += format_double(t.pSS) + "," + format_double(t.pSA) + "," +
       format_double(t.pAS) + "," + format_double(t.pAA) + "," +
       format_double(t.residualNorm) + "\n";
  return s;
}

inline Json witness_to_json(const NogoWitness& w) {
  Json j;
  j["d"] = w.d;
  j["rankSym"] = w.rankSym;
  j["rankAnti"] = w.rankAnti;
  Json comps = Json::array();
  for (const WitnessComponent& c : w.components) {
    Json jc;
    jc["encoderBlock"] = std::string(1, c.encoderBlock);
    jc["decoderBlock"] = std::string(1, c.decoderBlock);
    jc["encoderRank"] = c.encoderRank;
    jc["decoderRank"] = c.decoderRank;
    jc["feasible"] = c.feasible;
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  j["feasible"] = w.feasible;
  return j;
}

// One JSON object per line {dims, re, im}; malformed lines are collected
// with their 1-based line numbers instead of aborting the batch.
struct BatchLineError {
  int line;
  std::string message;
};

struct StateBatch {
  std::vector<StateVector> states;
  std::vector<int> lines;  // source line of each state
  std::vector<BatchLineError> errors;
};

inline StateBatch parse_state_batch(std::istream& in) {
  StateBatch batch;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      batch.states.push_back(state_from_json(j));
      batch.lines.push_back(lineNo);
    } catch (const std::exception& e) {
      batch.errors.push_back({lineNo, e.what()});
    }
  }
  return batch;
}

}  // namespace conjcomb
