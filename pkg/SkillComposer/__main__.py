import sys

from SkillComposer.Cli.Main import main

sys.exit(main())
