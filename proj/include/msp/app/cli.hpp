#pragma once

namespace msp {

// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
int run_cli(int argc, char** argv);

}  // namespace msp
