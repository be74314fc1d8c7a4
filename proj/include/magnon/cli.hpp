#pragma once

namespace magnon::cli {

// Exit codes: 0 success, 1 usage or validation error, 2 numerical invariant failure.
int run(int argc, char **argv);

}  // namespace magnon::cli
