#pragma once

namespace twistrec {

// Data files compiled into the library (see data/).
const char* embedded_two_bridge_csv();
const char* embedded_mcn_rules_csv();

}  // namespace twistrec
