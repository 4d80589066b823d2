#pragma once

#define REALCHROM_VERSION "1.0.0"
