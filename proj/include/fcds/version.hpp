#pragma once

#define FCDS_VERSION "1.0.0"
