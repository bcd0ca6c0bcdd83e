#include "sfcsim/metrics.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sfcsim {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

void write_run_csv(std::ostream& out, const RunResult& result) {
    out << "time,instance,host,admitted_pps,share,drops_overload,"
           "drops_unroutable,lsa_tx_total,generation\n";
    for (const auto& frame : result.frames) {
        for (const auto& inst : frame.instances) {
            out << format_double(frame.time) << ',' << inst.instance << ','
                << inst.host << ',' << format_double(inst.admitted_pps) << ','
                << format_double(inst.share) << ',' << frame.drops_overload
                << ',' << frame.drops_unroutable << ',' << frame.lsa_tx_total
                << ',' << frame.generation << '\n';
        }
    }
}

ParsedRunCsv read_run_csv(std::istream& in) {
    ParsedRunCsv parsed;
    std::string line;
    if (!std::getline(in, line)) return parsed;
    MetricsFrame* frame = nullptr;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 9) {
            throw std::runtime_error("malformed metrics CSV row: " + line);
        }
        const double time = std::stod(fields[0]);
        if (frame == nullptr || frame->time != time) {
            parsed.frames.push_back(MetricsFrame{});
            frame = &parsed.frames.back();
            frame->time = time;
            frame->drops_overload = std::stoull(fields[5]);
            frame->drops_unroutable = std::stoull(fields[6]);
            frame->lsa_tx_total = std::stoull(fields[7]);
            frame->generation = std::stoull(fields[8]);
        }
        InstanceSample sample;
        sample.instance = std::stoull(fields[1]);
        sample.host = fields[2];
        sample.admitted_pps = std::stod(fields[3]);
        sample.share = std::stod(fields[4]);
        parsed.hosts[sample.instance] = sample.host;
        frame->instances.push_back(sample);
    }
    return parsed;
}

}  // namespace sfcsim
