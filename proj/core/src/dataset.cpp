#include "qcog/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace qcog {

namespace {

const char* kHeader = "exemplar,muA,muB,muAp,muBp,muAB,muABp,muApB,muApBp";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_weight(const std::string& cell, std::size_t row,
                    const char* field) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw ParseError("row " + std::to_string(row) + ": field '" + field +
                     "' is not numeric: '" + cell + "'");
  }
  return v;
}

}  // namespace

void MembershipRecord::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"muA", muA},   {"muB", muB},     {"muAp", muAp},   {"muBp", muBp},
      {"muAB", muAB}, {"muABp", muABp}, {"muApB", muApB}, {"muApBp", muApBp}};
  for (auto [name, v] : fields) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("record '" + exemplar + "': " + name + " = " +
                            format_double(v) + " outside [0, 1]");
    }
  }
}

const std::vector<int>& LikertResponseMatrix::column(
    const std::string& question) const {
  auto it = std::find(questions.begin(), questions.end(), question);
  if (it == questions.end()) {
    throw ValidationError("unknown question '" + question + "'");
  }
  return entries[static_cast<std::size_t>(it - questions.begin())];
}

const char* to_string(Combination c) {
  switch (c) {
    case Combination::AB:   return "AB";
    case Combination::ABp:  return "ABp";
    case Combination::ApB:  return "ApB";
    case Combination::ApBp: return "ApBp";
  }
  return "?";
}

const char* to_string(Concept c) {
  switch (c) {
    case Concept::A:  return "A";
    case Concept::B:  return "B";
    case Concept::Ap: return "Ap";
    case Concept::Bp: return "Bp";
  }
  return "?";
}

double likert_to_weight(std::span<const int> column) {
  if (column.empty()) throw Error("empty response column");
  double sum = 0;
  for (int score : column) {
    if (score < -3 || score > 3) {
      throw ValidationError("score " + std::to_string(score) +
                            " outside the 7-point range");
    }
    if (score > 0) sum += 1.0;
    else if (score == 0) sum += 0.5;
  }
  return sum / static_cast<double>(column.size());
}

ConceptPairDataset load_dataset(std::istream& in, std::string pair_label) {
  ConceptPairDataset dataset;
  dataset.pair_label = std::move(pair_label);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, header required");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw ParseError("bad header: expected '" + std::string(kHeader) +
                     "', got '" + line + "'");
  }
  std::set<std::string> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (cells.size() != 9) {
      throw ParseError("row " + std::to_string(row) + ": expected 9 columns, got " +
                       std::to_string(cells.size()));
    }
    MembershipRecord r;
    r.exemplar = cells[0];
    const char* names[] = {"muA",  "muB",  "muAp",  "muBp",
                           "muAB", "muABp", "muApB", "muApBp"};
    double* slots[] = {&r.muA,  &r.muB,   &r.muAp,  &r.muBp,
                       &r.muAB, &r.muABp, &r.muApB, &r.muApBp};
    for (int i = 0; i < 8; ++i) {
      *slots[i] = parse_weight(cells[static_cast<std::size_t>(i) + 1], row, names[i]);
      if (!(*slots[i] >= 0.0 && *slots[i] <= 1.0)) {
        throw ParseError("row " + std::to_string(row) + ": " + names[i] + " = " +
                         cells[static_cast<std::size_t>(i) + 1] + " outside [0, 1]");
      }
    }
    if (!seen.insert(r.exemplar).second) {
      throw ParseError("row " + std::to_string(row) + ": duplicate exemplar '" +
                       r.exemplar + "'");
    }
    dataset.records.push_back(std::move(r));
  }
  return dataset;
}

ConceptPairDataset load_dataset_file(const std::string& path,
                                     std::string pair_label) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  if (pair_label.empty()) {
    auto slash = path.find_last_of("/\\");
    auto stem = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    pair_label = dot == std::string::npos ? stem : stem.substr(0, dot);
  }
  return load_dataset(in, std::move(pair_label));
}

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void serialize(const ConceptPairDataset& dataset, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& r : dataset.records) {
    out << r.exemplar;
    for (double v : {r.muA, r.muB, r.muAp, r.muBp, r.muAB, r.muABp, r.muApB,
                     r.muApBp}) {
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

std::string serialize(const ConceptPairDataset& dataset) {
  std::ostringstream out;
  serialize(dataset, out);
  return out.str();
}

LikertResponseMatrix load_likert(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input, header required");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "subject,question,score") {
    throw ParseError("bad header: expected 'subject,question,score'");
  }
  LikertResponseMatrix m;
  std::vector<std::string> subjects;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (cells.size() != 3) {
      throw ParseError("row " + std::to_string(row) + ": expected 3 columns");
    }
    int score = 0;
    auto [ptr, ec] =
        std::from_chars(cells[2].data(), cells[2].data() + cells[2].size(), score);
    if (ec != std::errc{} || ptr != cells[2].data() + cells[2].size()) {
      throw ParseError("row " + std::to_string(row) + ": score not an integer");
    }
    if (score < -3 || score > 3) {
      throw ValidationError("row " + std::to_string(row) + ": score " +
                            cells[2] + " outside the 7-point range");
    }
    if (std::find(subjects.begin(), subjects.end(), cells[0]) == subjects.end()) {
      subjects.push_back(cells[0]);
    }
    auto qit = std::find(m.questions.begin(), m.questions.end(), cells[1]);
    std::size_t qi;
    if (qit == m.questions.end()) {
      qi = m.questions.size();
      m.questions.push_back(cells[1]);
      m.entries.emplace_back();
    } else {
      qi = static_cast<std::size_t>(qit - m.questions.begin());
    }
    m.entries[qi].push_back(score);
  }
  m.subjects = subjects.size();
  for (std::size_t q = 0; q < m.questions.size(); ++q) {
    if (m.entries[q].size() != m.subjects) {
      throw ParseError("question '" + m.questions[q] + "' has " +
                       std::to_string(m.entries[q].size()) + " answers for " +
                       std::to_string(m.subjects) + " subjects");
    }
  }
  return m;
}

LikertResponseMatrix load_likert_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return load_likert(in);
}

}  // namespace qcog
