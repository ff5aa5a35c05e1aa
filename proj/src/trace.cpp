#include "xsect/trace.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "xsect/errors.hpp"

namespace xsect {

using nlohmann::json;

void write_trace(std::ostream& os, const GridParams& params, const Trace& trace) {
  os << json{{"format", "xsect-trace"}, {"version", 1}, {"N", params.depth}, {"K", params.refinement}}.dump()
     << '\n';
  for (const auto& r : trace) {
    os << json{{"n", r.move.generation},
               {"i", r.move.row},
               {"j", r.move.donor},
               {"k", r.move.receiver},
               {"dl1", r.delta_l1.to_string()},
               {"symdiff", r.sym_diff.to_string()}}
              .dump()
       << '\n';
  }
}

ParsedTrace read_trace(std::istream& is) {
  ParsedTrace out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("format", "") != "xsect-trace") throw MalformedTrace("missing trace header");
        out.params = GridParams(j.at("N").get<int>(), j.at("K").get<int>());
        have_header = true;
        continue;
      }
      SwapRecord r;
      r.move = SwapMove{j.at("n").get<int>(), j.at("i").get<int>(), j.at("j").get<int>(),
                        j.at("k").get<int>()};
      r.delta_l1 = Dyadic::parse(j.at("dl1").get<std::string>());
      r.sym_diff = Dyadic::parse(j.at("symdiff").get<std::string>());
      out.records.push_back(r);
    } catch (const MalformedTrace&) {
      throw;
    } catch (const std::exception& e) {
      throw MalformedTrace("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw MalformedTrace("empty trace");
  return out;
}

}  // namespace xsect
