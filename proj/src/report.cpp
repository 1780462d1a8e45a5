#include "landau/report.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "landau/io.hpp"

namespace landau {

namespace {
std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}
}  // namespace

Report::Report(std::string suite, unsigned long long seed)
    : suite_(std::move(suite)), seed_(seed) {}

void Report::add(const std::string& id, const std::string& inputs, double measured,
                 double tolerance) {
  for (const auto& c : checks_)
    if (c.id == id) throw std::logic_error("report: duplicate check id " + id);
  checks_.push_back({id, inputs, measured, tolerance, measured < tolerance, true});
}

void Report::info(const std::string& id, const std::string& inputs, double measured) {
  for (const auto& c : checks_)
    if (c.id == id) throw std::logic_error("report: duplicate check id " + id);
  checks_.push_back({id, inputs, measured, 0.0, true, false});
}

void Report::errata(const ErrataEntry& entry) { errata_.push_back(entry); }

void Report::merge(const Report& other) {
  for (const auto& c : other.checks_) {
    for (const auto& mine : checks_)
      if (mine.id == c.id) throw std::logic_error("report: duplicate check id " + c.id);
    checks_.push_back(c);
  }
  for (const auto& e : other.errata_) errata_.push_back(e);
}

bool Report::all_pass() const {
  for (const auto& c : checks_)
    if (c.asserted && !c.pass) return false;
  return true;
}

std::string Report::to_json() const {
  std::ostringstream out;
  out << "{\n  \"suite\": \"" << escape(suite_) << "\",\n  \"seed\": " << seed_
      << ",\n  \"checks\": [\n";
  for (std::size_t i = 0; i < checks_.size(); ++i) {
    const auto& c = checks_[i];
    out << "    {\"id\": \"" << escape(c.id) << "\", \"inputs\": \"" << escape(c.inputs)
        << "\", \"measured\": " << format_full(c.measured);
    if (c.asserted)
      out << ", \"tolerance\": " << format_full(c.tolerance) << ", \"pass\": "
          << (c.pass ? "true" : "false");
    else
      out << ", \"informational\": true";
    out << "}" << (i + 1 < checks_.size() ? "," : "") << "\n";
  }
  out << "  ],\n  \"errata\": [\n";
  for (std::size_t i = 0; i < errata_.size(); ++i) {
    const auto& e = errata_[i];
    out << "    {\"equation\": \"" << escape(e.equation) << "\", \"printed\": \""
        << escape(e.printed) << "\", \"corrected\": \"" << escape(e.corrected)
        << "\", \"evidence\": " << format_full(e.evidence)
        << ", \"tolerance\": " << format_full(e.tolerance) << "}"
        << (i + 1 < errata_.size() ? "," : "") << "\n";
  }
  out << "  ],\n  \"pass\": " << (all_pass() ? "true" : "false") << "\n}\n";
  return out.str();
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "kind,id,inputs,measured,tolerance,pass\n";
  for (const auto& c : checks_) {
    out << "check," << c.id << ",\"" << c.inputs << "\"," << format_full(c.measured) << ',';
    if (c.asserted)
      out << format_full(c.tolerance) << ',' << (c.pass ? "pass" : "FAIL");
    else
      out << ",info";
    out << '\n';
  }
  for (const auto& e : errata_)
    out << "errata," << e.equation << ",\"" << e.printed << " -> " << e.corrected
        << "\"," << format_full(e.evidence) << ',' << format_full(e.tolerance)
        << ",reported\n";
  return out.str();
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "suite " << suite_ << " (seed " << seed_ << ")\n";
  for (const auto& c : checks_) {
    if (c.asserted)
      out << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.id << ": measured "
          << format_full(c.measured) << " vs tolerance " << format_full(c.tolerance);
    else
      out << "  [INFO] " << c.id << ": " << format_full(c.measured);
    if (!c.inputs.empty()) out << "  (" << c.inputs << ")";
    out << '\n';
  }
  for (const auto& e : errata_)
    out << "  [ERRATA] " << e.equation << ": printed \"" << e.printed
        << "\" corrected to \"" << e.corrected << "\", evidence "
        << format_full(e.evidence) << " vs tolerance " << format_full(e.tolerance)
        << '\n';
  out << (all_pass() ? "  result: PASS\n" : "  result: FAIL\n");
  return out.str();
}

void Report::write(const std::string& dir, const std::string& format) const {
  std::filesystem::create_directories(dir);
  const std::string ext = format == "csv" ? ".csv" : ".json";
  const std::string body = format == "csv" ? to_csv() : to_json();
  atomic_write(dir + "/report_" + suite_ + ext, body);
}

}  // namespace landau
