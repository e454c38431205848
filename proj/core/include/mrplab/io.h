#pragma once

#include <string>

#include "mrplab/mrp.h"
#include "mrplab/sufficient_stats.h"

namespace mrplab {

MrpSpec parse_mrp(const std::string& text);
MrpSpec load_mrp(const std::string& path);
std::string mrp_to_json(const MrpSpec& spec);

SuffStat parse_suffstat(const std::string& text);
SuffStat load_suffstat(const std::string& path);
std::string suffstat_to_json(const SuffStat& stat);

std::string read_file(const std::string& path);

// Locale-independent %.<digits>g.
std::string format_number(double x, int digits = 12);

}  // namespace mrplab
